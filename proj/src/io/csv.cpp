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
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fimax/error.hpp"
#include "io/csv.hpp"
#include "io/format.hpp"

namespace fimax::io {
namespace {

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += FormatDouble(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoError, "CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = Split(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = Split(line);
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::kIoError, "CSV line " + std::to_string(lineno) + " has " +
                                           std::to_string(fields.size()) + " fields, expected " +
                                           std::to_string(table.header.size()));
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0;
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw Error(ErrorCode::kIoError,
                    "CSV line " + std::to_string(lineno) + ": '" + f + "' is not a number");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

void make_dirs(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + path + "': " + ec.message());
}

Table sample_table(const std::vector<std::string>& header, const std::vector<double>& times,
                   const std::vector<const DenseTrajectory*>& curves) {
  Table table;
  table.header = header;
  Eigen::VectorXd v;
  for (double t : times) {
    std::vector<double> row{t};
    for (const DenseTrajectory* c : curves) {
      c->eval(t, v);
      row.insert(row.end(), v.data(), v.data() + v.size());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

DenseTrajectory table_to_linear(const Table& table, int dim) {
  if (static_cast<int>(table.header.size()) != dim + 1) {
    throw Error(ErrorCode::kIoError, "expected " + std::to_string(dim + 1) + " CSV columns");
  }
  if (table.rows.size() < 2) throw Error(ErrorCode::kIoError, "curve CSV needs at least 2 rows");
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
  for (const auto& row : table.rows) {
    times.push_back(row[0]);
    values.push_back(Eigen::Map<const Eigen::VectorXd>(row.data() + 1, dim));
  }
  return DenseTrajectory::Linear(std::move(times), values);
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += FormatDouble(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace fimax::io
