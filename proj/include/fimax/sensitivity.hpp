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
#ifndef FIMAX_SENSITIVITY_HPP_
#define FIMAX_SENSITIVITY_HPP_

#include <span>

#include "fimax/model.hpp"
#include "fimax/numkit.hpp"
#include "fimax/tensor.hpp"

namespace fimax {

// psi is stored row-major as psi(a, j) -> a * p + j and omega as
// omega(a, j, k) -> (a * p + j) * p + k.
struct SensitivityBundle {
  int n = 0;
  int p = 0;
  DenseTrajectory state;
  DenseTrajectory psi;
  DenseTrajectory omega;  // empty unless second order was requested

  bool has_omega() const { return !omega.empty(); }
  Eigen::MatrixXd psi_at(double t) const;
  Tensor3 omega_at(double t) const;
};

Eigen::MatrixXd UnpackPsi(const Eigen::VectorXd& flat, int n, int p);
Tensor3 UnpackOmega(const Eigen::VectorXd& flat, int n, int p);

// Integrates x, psi and (optionally) omega as one augmented system. The knots
// of `u` are always passed to the integrator as breakpoints in addition to
// `breakpoints`.
SensitivityBundle propagate(const PlantModel& model, const Eigen::VectorXd& x0,
                            const DenseTrajectory& u, const Eigen::VectorXd& theta,
                            TimeSpan span, bool second_order,
                            const IntegratorConfig& cfg = {},
                            std::span<const double> breakpoints = {});

// x_traj supplies the initial state and span; the state is re-integrated
// jointly with the sensitivities.
DenseTrajectory propagate_first(const PlantModel& model, const DenseTrajectory& x_traj,
                                const DenseTrajectory& u, const Eigen::VectorXd& theta,
                                const IntegratorConfig& cfg = {});
DenseTrajectory propagate_second(const PlantModel& model, const DenseTrajectory& x_traj,
                                 const DenseTrajectory& u, const Eigen::VectorXd& theta,
                                 const DenseTrajectory& psi, const IntegratorConfig& cfg = {});

// Gamma = D_x g * psi + D_theta g.
Eigen::MatrixXd output_sensitivity(const PlantModel& model, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& u, const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& psi);

// Knot times of `u` strictly inside `span`, merged with `extra`.
std::vector<double> merged_breakpoints(const DenseTrajectory& u, TimeSpan span,
                                       std::span<const double> extra = {});

}  // namespace fimax

#endif  // FIMAX_SENSITIVITY_HPP_
