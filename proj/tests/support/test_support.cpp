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

#include "support/test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fimax::testing {

double RelErr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor) {
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), floor});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

DenseTrajectory SineControl(const TrajectoryProblem& prob, double amplitude, double frequency_hz,
                            double phase) {
  const double w = 2.0 * std::numbers::pi * frequency_hz;
  return control_on_grid(prob, [&](double t) {
    return Eigen::VectorXd::Constant(prob.m(), amplitude * std::sin(w * t + phase));
  });
}

CartSetup::CartSetup(double amplitude, double frequency_hz, CartParameterSet set,
                     CartDoublePendulumParams params)
    : model(params, set) {
  prob.model = &model;
  prob.theta = model.nominal_theta();
  prob.x0 = Eigen::VectorXd::Zero(6);
  prob.span = {0.0, 5.0};
  prob.weights = Weights::Defaults(6, 1, 2);
  prob.sigma = MeasurementNoise::CartDefault();
  eta0 = simulate_extended(prob, SineControl(prob, amplitude, frequency_hz));
  prob.x_desired = eta0.xbar.block(0, 6);
}

}  // namespace fimax::testing
