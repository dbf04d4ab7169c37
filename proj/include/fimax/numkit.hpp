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

// Adaptive ODE integration with dense output, and finite-difference helpers
// used as oracles for the analytic derivatives elsewhere in the library.

#ifndef FIMAX_NUMKIT_HPP_
#define FIMAX_NUMKIT_HPP_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace fimax {

struct TimeSpan {
  double t0 = 0.0;
  double tf = 0.0;

  double length() const { return tf - t0; }
};

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double h_min = 1e-12;
  double h_init = 1e-4;
  double h_max = 0.1;
  long max_steps = 5'000'000;

  // Throws kInvalidArgument when an invariant is violated.
  void validate() const;
};

enum class Interpolation { kLinear, kCubicHermite };

// Immutable time-indexed curve. Knot times are strictly increasing and
// evaluation at a knot returns the stored value exactly.
class DenseTrajectory {
 public:
  DenseTrajectory() = default;

  static DenseTrajectory Linear(std::vector<double> times,
                                const std::vector<Eigen::VectorXd>& values);
  static DenseTrajectory Hermite(std::vector<double> times,
                                 const std::vector<Eigen::VectorXd>& values,
                                 const std::vector<Eigen::VectorXd>& derivatives);
  // Column i of `values` is the knot value at times[i].
  static DenseTrajectory Linear(std::vector<double> times, Eigen::MatrixXd values);

  Eigen::VectorXd eval(double t) const;
  void eval(double t, Eigen::VectorXd& out) const;

  double t0() const { return times_.front(); }
  double tf() const { return times_.back(); }
  int dim() const { return static_cast<int>(values_.rows()); }
  size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  Interpolation interpolation() const { return interpolation_; }

  const std::vector<double>& times() const { return times_; }
  Eigen::VectorXd value(size_t i) const { return values_.col(static_cast<Eigen::Index>(i)); }
  const Eigen::MatrixXd& values() const { return values_; }

  // Rows [first, first + count) as a new trajectory with the same knots.
  DenseTrajectory block(int first, int count) const;

 private:
  void check_times() const;
  size_t interval(double t) const;

  std::vector<double> times_;
  Eigen::MatrixXd values_;       // dim x knots
  Eigen::MatrixXd derivatives_;  // dim x knots, empty for linear
  Interpolation interpolation_ = Interpolation::kLinear;
};

// Writes dx/dt into `dxdt` (pre-sized to x.size()).
using VectorField =
    std::function<void(double t, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt)>;

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
  std::vector<double> step_sizes;  // accepted |h|

  double min_step() const;
  double mean_step() const;
  double stddev_step() const;
};

// Dormand-Prince 5(4) with PI step-size control and cubic-Hermite dense output.
// `span.tf < span.t0` integrates backwards; the returned knots are always
// increasing in time. The integrator lands exactly on every breakpoint inside
// the span and never steps across one, which keeps kinks in the field (for
// example piecewise-linear inputs) out of the error estimate.
DenseTrajectory integrate(const VectorField& field, const Eigen::VectorXd& x0,
                          TimeSpan span, const IntegratorConfig& cfg,
                          std::span<const double> breakpoints = {},
                          IntegrationStats* stats = nullptr);

using VectorFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Central-difference Jacobian with absolute step h.
Eigen::MatrixXd fd_jacobian(const VectorFunction& fn, const Eigen::VectorXd& x, double h);

}  // namespace fimax

#endif  // FIMAX_NUMKIT_HPP_
