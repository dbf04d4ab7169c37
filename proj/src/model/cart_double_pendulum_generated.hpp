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

#ifndef FIMAX_MODEL_CART_DOUBLE_PENDULUM_GENERATED_HPP_
#define FIMAX_MODEL_CART_DOUBLE_PENDULUM_GENERATED_HPP_

namespace fimax::detail {

struct CartPendulumConstants {
  double k1;  // link inertia per unit mass about the COM
  double k2;
  double s1;  // pivot to COM
  double s2;
  double d;   // joint separation on link 1
  double gravity;
};

// Joint accelerations (phi1'', phi2'') and, in the longer overloads, their
// first and second partials with respect to
// z = (phi1, phi2, phi1dot, phi2dot, u, m1, m2, c).
void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
                               double acc[2]);
void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
                               double acc[2], double jac[2][8]);
void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
                               double acc[2], double jac[2][8], double hess[2][8][8]);

}  // namespace fimax::detail

#endif  // FIMAX_MODEL_CART_DOUBLE_PENDULUM_GENERATED_HPP_
