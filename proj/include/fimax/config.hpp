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

#ifndef FIMAX_CONFIG_HPP_
#define FIMAX_CONFIG_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/estimation.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {

// Everything a workflow needs. Units: seconds, Hz, kg, m, g/s, rad.
struct ExperimentConfig {
  std::string model = "cart_double_pendulum";  // or "linear_scalar"
  std::string parameters = "m1_c";             // cart only: "m1_c" or "m1_m2"
  CartDoublePendulumParams cart;

  Eigen::VectorXd theta_true;  // truth used to synthesize measurements
  Eigen::VectorXd theta0;      // prior estimate; trajectories are designed at this value
  double horizon = 5.0;
  double rate_hz = 30.0;
  Eigen::MatrixXd sigma;  // h x h output noise covariance
  Eigen::VectorXd initial_state;

  double control_amplitude = 0.2;  // m/s^2
  double control_frequency_hz = 0.5;
  double control_dt = 0.01;
  std::string control_csv;  // overrides the sinusoid when set
  double perturb_amplitude = 0.0;
  double perturb_frequency_hz = 0.7;

  double Q_p = 10.0;
  Eigen::VectorXd Q_tau_diag;
  Eigen::VectorXd R_tau_diag;
  double Q_n_scale = 1.0;
  double R_n_scale = 1.0;
  Eigen::VectorXd Q_K_diag;  // state block only; the sensitivity block is unweighted
  Eigen::VectorXd R_K_diag;

  IntegratorConfig integrator;
  OptimizerOptions optimizer;
  EstimatorOptions estimator;
  std::string measurements_csv;

  int trials = 100;
  double theta0_spread = 0.2;
  int threads = 0;

  uint64_t seed = 0;
  std::string output_dir = "out";

  // Dimension and range checks; throws kConfigError.
  void validate() const;
};

// Strict JSON: unknown keys are rejected. Missing keys take the defaults of the
// selected model. Throws kConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Every field, including defaults. parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const ExperimentConfig& config);

std::unique_ptr<PlantModel> make_model(const ExperimentConfig& config);

}  // namespace fimax

#endif  // FIMAX_CONFIG_HPP_
