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
#ifndef FIMAX_IO_CSV_HPP_
#define FIMAX_IO_CSV_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fimax/numkit.hpp"

namespace fimax::io {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& table);
// Numeric table with a header line; throws kIoError.
Table parse_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
void make_dirs(const std::string& path);

// Rows t, v1, ..., vd sampled at `times`.
Table sample_table(const std::vector<std::string>& header, const std::vector<double>& times,
                   const std::vector<const DenseTrajectory*>& curves);

// Piecewise-linear curve from a table whose first column is time.
DenseTrajectory table_to_linear(const Table& table, int dim);

std::string matrix_csv(const Eigen::MatrixXd& m);

}  // namespace fimax::io

#endif  // FIMAX_IO_CSV_HPP_
