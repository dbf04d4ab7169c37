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

#ifndef FIMAX_TENSOR_HPP_
#define FIMAX_TENSOR_HPP_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace fimax {

// Dense rank-3 tensor, row-major in (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2)
      : d0_(d0), d1_(d1), d2_(d2), data_(static_cast<size_t>(d0) * d1 * d2) {}

  void resize(int d0, int d1, int d2) {
    d0_ = d0;
    d1_ = d1;
    d2_ = d2;
    data_.assign(static_cast<size_t>(d0) * d1 * d2, 0.0);
  }
  void setZero() { std::fill(data_.begin(), data_.end(), 0.0); }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int i, int j, int k) {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return data_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
  }
  double operator()(int i, int j, int k) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return data_[(static_cast<size_t>(i) * d1_ + j) * d2_ + k];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> data_;
};

}  // namespace fimax

#endif  // FIMAX_TENSOR_HPP_
