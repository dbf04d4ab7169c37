// Copyright 2026 The fimax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the fimax library. All functions are thread-safe; the last
 * error message is kept per thread. */

#ifndef FIMAX_FIMAX_H_
#define FIMAX_FIMAX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FIMAX_BUILDING_LIBRARY)
#define FIMAX_API __declspec(dllexport)
#else
#define FIMAX_API __declspec(dllimport)
#endif
#else
#define FIMAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fimax_status {
  FIMAX_OK = 0,
  FIMAX_ERR_INVALID_ARGUMENT = 1,
  FIMAX_ERR_CONFIG = 2,
  FIMAX_ERR_IO = 3,
  FIMAX_ERR_NUMERICAL = 4,
  FIMAX_ERR_SINGULAR_INFORMATION = 5,
  FIMAX_ERR_INTERNAL = 6
} fimax_status;

typedef struct fimax_config fimax_config;

FIMAX_API const char* fimax_version(void);

/* Message of the most recent failure on this thread, "" if none. */
FIMAX_API const char* fimax_last_error(void);
FIMAX_API const char* fimax_status_name(fimax_status status);
/* Process exit code for a status: 0 ok, 2 config/input, 3 numerical. */
FIMAX_API int fimax_exit_code(fimax_status status);

FIMAX_API fimax_status fimax_config_load(const char* path, fimax_config** out);
FIMAX_API fimax_status fimax_config_parse(const char* json_text, fimax_config** out);
FIMAX_API void fimax_config_free(fimax_config* config);

FIMAX_API fimax_status fimax_config_set_seed(fimax_config* config, uint64_t seed);
FIMAX_API fimax_status fimax_config_set_output_dir(fimax_config* config, const char* dir);
FIMAX_API fimax_status fimax_config_set_trials(fimax_config* config, int trials);

/* Effective configuration as JSON. Release with fimax_string_free. */
FIMAX_API fimax_status fimax_config_to_json(const fimax_config* config, char** json_out);

/* Runs simulate, optimize, estimate, montecarlo, crb or report. On success
 * *summary_out (if non-null) receives a human-readable summary. */
FIMAX_API fimax_status fimax_run(const fimax_config* config, const char* workflow,
                                 char** summary_out);

FIMAX_API void fimax_string_free(char* str);

/* Eigenvalues of a symmetric p x p row-major matrix, ascending. */
FIMAX_API fimax_status fimax_symmetric_eigenvalues(const double* matrix, int p,
                                                   double* eigenvalues_out);

/* Derivative of the smallest eigenvalue of `matrix` along `d_matrix`. */
FIMAX_API fimax_status fimax_min_eigenvalue_derivative(const double* matrix,
                                                       const double* d_matrix, int p,
                                                       double* derivative_out);

#ifdef __cplusplus
}
#endif

#endif /* FIMAX_FIMAX_H_ */
