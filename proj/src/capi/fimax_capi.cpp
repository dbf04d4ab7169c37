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

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fimax/config.hpp"
#include "fimax/error.hpp"
#include "fimax/fimax.h"
#include "fimax/information.hpp"
#include "fimax/workflows.hpp"

struct fimax_config {
  fimax::ExperimentConfig value;
};

namespace {

thread_local std::string g_last_error;

fimax_status StatusFor(fimax::ErrorCode code) {
  using fimax::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
      return FIMAX_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfigError:
      return FIMAX_ERR_CONFIG;
    case ErrorCode::kIoError:
      return FIMAX_ERR_IO;
    case ErrorCode::kSingularInformation:
      return FIMAX_ERR_SINGULAR_INFORMATION;
    default:
      return FIMAX_ERR_NUMERICAL;
  }
}

template <typename Fn>
fimax_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return FIMAX_OK;
  } catch (const fimax::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FIMAX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FIMAX_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FIMAX_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw fimax::Error(fimax::ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Eigen::MatrixXd SymmetricFrom(const double* data, int p) {
  Eigen::MatrixXd m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                     Eigen::RowMajor>>(data, p, p);
  Require(m.allFinite(), "matrix has non-finite entries");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  Require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, "matrix is not symmetric");
  return 0.5 * (m + m.transpose());
}

}  // namespace

extern "C" {

const char* fimax_version(void) { return "0.1.0"; }

const char* fimax_last_error(void) { return g_last_error.c_str(); }

const char* fimax_status_name(fimax_status status) {
  switch (status) {
    case FIMAX_OK:
      return "ok";
    case FIMAX_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case FIMAX_ERR_CONFIG:
      return "config error";
    case FIMAX_ERR_IO:
      return "io error";
    case FIMAX_ERR_NUMERICAL:
      return "numerical error";
    case FIMAX_ERR_SINGULAR_INFORMATION:
      return "singular information";
    case FIMAX_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

int fimax_exit_code(fimax_status status) {
  switch (status) {
    case FIMAX_OK:
      return 0;
    case FIMAX_ERR_INVALID_ARGUMENT:
    case FIMAX_ERR_CONFIG:
    case FIMAX_ERR_IO:
      return 2;
    default:
      return 3;
  }
}

fimax_status fimax_config_load(const char* path, fimax_config** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    *out = nullptr;
    *out = new fimax_config{fimax::load_config(path)};
  });
}

fimax_status fimax_config_parse(const char* json_text, fimax_config** out) {
  return Guard([&] {
    Require(json_text && out, "null argument");
    *out = nullptr;
    *out = new fimax_config{fimax::parse_config(json_text)};
  });
}

void fimax_config_free(fimax_config* config) { delete config; }

fimax_status fimax_config_set_seed(fimax_config* config, uint64_t seed) {
  return Guard([&] {
    Require(config, "null config");
    config->value.seed = seed;
  });
}

fimax_status fimax_config_set_output_dir(fimax_config* config, const char* dir) {
  return Guard([&] {
    Require(config && dir, "null argument");
    fimax::ExperimentConfig next = config->value;
    next.output_dir = dir;
    next.validate();
    config->value = std::move(next);
  });
}

fimax_status fimax_config_set_trials(fimax_config* config, int trials) {
  return Guard([&] {
    Require(config, "null config");
    fimax::ExperimentConfig next = config->value;
    next.trials = trials;
    next.validate();
    config->value = std::move(next);
  });
}

fimax_status fimax_config_to_json(const fimax_config* config, char** json_out) {
  return Guard([&] {
    Require(config && json_out, "null argument");
    *json_out = CopyString(fimax::config_to_json(config->value));
  });
}

fimax_status fimax_run(const fimax_config* config, const char* workflow, char** summary_out) {
  return Guard([&] {
    Require(config && workflow, "null argument");
    if (summary_out) *summary_out = nullptr;
    const fimax::WorkflowOutput out = fimax::run_workflow(workflow, config->value);
    if (summary_out) *summary_out = CopyString(out.summary);
  });
}

void fimax_string_free(char* str) { std::free(str); }

fimax_status fimax_symmetric_eigenvalues(const double* matrix, int p, double* eigenvalues_out) {
  return Guard([&] {
    Require(matrix && eigenvalues_out && p > 0, "invalid argument");
    const fimax::InfoMatrix info(SymmetricFrom(matrix, p), fimax::InfoKind::kDiscrete);
    for (int i = 0; i < p; ++i) eigenvalues_out[i] = info.eigenvalues()[i];
  });
}

fimax_status fimax_min_eigenvalue_derivative(const double* matrix, const double* d_matrix, int p,
                                             double* derivative_out) {
  return Guard([&] {
    Require(matrix && d_matrix && derivative_out && p > 0, "invalid argument");
    const fimax::InfoMatrix info(SymmetricFrom(matrix, p), fimax::InfoKind::kDiscrete);
    *derivative_out =
        fimax::eig_derivative(SymmetricFrom(d_matrix, p), fimax::min_eigenpair(info));
  });
}

}  // extern "C"
