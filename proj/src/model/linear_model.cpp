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

#include "fimax/model.hpp"

namespace fimax {

void LinearScalarModel::dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& theta, Eigen::VectorXd& xdot) const {
  xdot.resize(1);
  xdot[0] = theta[0] * x[0] + u[0];
}

void LinearScalarModel::output(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                               const Eigen::VectorXd&, Eigen::VectorXd& y) const {
  y.resize(1);
  y[0] = x[0];
}

void LinearScalarModel::dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                                             const Eigen::VectorXd& theta, DerivativeOrder order,
                                             DynamicsDerivatives& out) const {
  out.resize(1, 1, 1, order);
  out.fx(0, 0) = theta[0];
  out.fu(0, 0) = 1.0;
  out.ftheta(0, 0) = x[0];
  if (order == DerivativeOrder::kSecond) out.fxtheta(0, 0, 0) = 1.0;
}

void LinearScalarModel::output_derivatives(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                           const Eigen::VectorXd&, OutputDerivatives& out) const {
  out.resize(1, 1, 1);
  out.gx(0, 0) = 1.0;
}

}  // namespace fimax
