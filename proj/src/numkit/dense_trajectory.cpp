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
#include <cmath>
#include <sstream>

#include "fimax/error.hpp"
#include "fimax/numkit.hpp"

namespace fimax {
namespace {

Eigen::MatrixXd Stack(const std::vector<Eigen::VectorXd>& columns) {
  if (columns.empty()) return {};
  const Eigen::Index dim = columns.front().size();
  Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(columns.size()));
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "trajectory knots have inconsistent dimension");
    }
    out.col(static_cast<Eigen::Index>(i)) = columns[i];
  }
  return out;
}

}  // namespace

DenseTrajectory DenseTrajectory::Linear(std::vector<double> times,
                                        const std::vector<Eigen::VectorXd>& values) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "knot times and values differ in count");
  }
  return Linear(std::move(times), Stack(values));
}

DenseTrajectory DenseTrajectory::Linear(std::vector<double> times, Eigen::MatrixXd values) {
  DenseTrajectory traj;
  traj.times_ = std::move(times);
  traj.values_ = std::move(values);
  traj.interpolation_ = Interpolation::kLinear;
  if (static_cast<size_t>(traj.values_.cols()) != traj.times_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "knot times and values differ in count");
  }
  traj.check_times();
  return traj;
}

DenseTrajectory DenseTrajectory::Hermite(std::vector<double> times,
                                         const std::vector<Eigen::VectorXd>& values,
                                         const std::vector<Eigen::VectorXd>& derivatives) {
  if (times.size() != values.size() || times.size() != derivatives.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "knot times, values and derivatives differ in count");
  }
  DenseTrajectory traj;
  traj.times_ = std::move(times);
  traj.values_ = Stack(values);
  traj.derivatives_ = Stack(derivatives);
  if (traj.derivatives_.rows() != traj.values_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "derivative dimension differs from value");
  }
  traj.interpolation_ = Interpolation::kCubicHermite;
  traj.check_times();
  return traj;
}

void DenseTrajectory::check_times() const {
  if (times_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "trajectory needs at least one knot");
  }
  for (size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite knot time");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      std::ostringstream msg;
      msg << "knot times must be strictly increasing (index " << i << ")";
      throw Error(ErrorCode::kInvalidArgument, msg.str());
    }
  }
}

size_t DenseTrajectory::interval(double t) const {
  // Index i such that times_[i] <= t <= times_[i + 1].
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  size_t i = static_cast<size_t>(it - times_.begin());
  if (i == 0) return 0;
  i -= 1;
  return std::min(i, times_.size() - 2);
}

Eigen::VectorXd DenseTrajectory::eval(double t) const {
  Eigen::VectorXd out;
  eval(t, out);
  return out;
}

void DenseTrajectory::eval(double t, Eigen::VectorXd& out) const {
  if (empty()) throw Error(ErrorCode::kOutOfDomain, "empty trajectory");
  if (!(t >= t0() && t <= tf())) {
    std::ostringstream msg;
    msg << "t=" << t << " outside [" << t0() << ", " << tf() << "]";
    throw Error(ErrorCode::kOutOfDomain, msg.str());
  }
  if (times_.size() == 1) {
    out = values_.col(0);
    return;
  }
  const size_t i = interval(t);
  const auto a = static_cast<Eigen::Index>(i);
  const double h = times_[i + 1] - times_[i];
  const double s = (t - times_[i]) / h;
  if (s == 0.0) {
    out = values_.col(a);
    return;
  }
  if (s == 1.0) {
    out = values_.col(a + 1);
    return;
  }
  if (interpolation_ == Interpolation::kLinear) {
    out = (1.0 - s) * values_.col(a) + s * values_.col(a + 1);
    return;
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  out = h00 * values_.col(a) + (h10 * h) * derivatives_.col(a) +
        h01 * values_.col(a + 1) + (h11 * h) * derivatives_.col(a + 1);
}

DenseTrajectory DenseTrajectory::block(int first, int count) const {
  DenseTrajectory out;
  out.times_ = times_;
  out.values_ = values_.middleRows(first, count);
  if (derivatives_.size() > 0) out.derivatives_ = derivatives_.middleRows(first, count);
  out.interpolation_ = interpolation_;
  return out;
}

}  // namespace fimax
