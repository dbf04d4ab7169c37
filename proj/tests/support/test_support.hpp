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

#ifndef FIMAX_TESTS_SUPPORT_TEST_SUPPORT_HPP_
#define FIMAX_TESTS_SUPPORT_TEST_SUPPORT_HPP_

#include <memory>

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/trajopt.hpp"

namespace fimax::testing {

// max |a - b| / max(|a|, |b|), with a floor on the scale.
double RelErr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor = 1e-300);

// The flagship design problem: cart at theta* from rest, u = A sin(2 pi f t)
// over 5 s, default weights.
struct CartSetup {
  CartDoublePendulum model;
  TrajectoryProblem prob;
  ExtendedTrajectory eta0;

  explicit CartSetup(double amplitude = 0.2, double frequency_hz = 0.5,
                     CartParameterSet set = CartParameterSet::kMassDamping,
                     CartDoublePendulumParams params = {});
  CartSetup(const CartSetup&) = delete;
  CartSetup& operator=(const CartSetup&) = delete;
};

DenseTrajectory SineControl(const TrajectoryProblem& prob, double amplitude, double frequency_hz,
                            double phase = 0.0);

}  // namespace fimax::testing

#endif  // FIMAX_TESTS_SUPPORT_TEST_SUPPORT_HPP_
