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
#ifndef FIMAX_ESTIMATION_HPP_
#define FIMAX_ESTIMATION_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fimax/model.hpp"
#include "fimax/numkit.hpp"

namespace fimax {

struct MeasurementSet {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
  MeasurementNoise sigma;

  size_t size() const { return times.size(); }
  // Strictly increasing times inside `span`, finite values of dimension h.
  void validate(int h, TimeSpan span) const;
};

// t0 + i / rate for i = 1, 2, ... while the time stays within the span.
std::vector<double> sample_times(TimeSpan span, double rate_hz);

// Header t,y1,...,yh; round-trip formatting.
std::string measurements_to_csv(const MeasurementSet& meas);
MeasurementSet measurements_from_csv(const std::string& text, const MeasurementNoise& sigma);

// Independent stream for (seed, trial, stream id).
std::mt19937_64 make_stream(uint64_t seed, uint64_t trial, uint64_t stream);

enum RandomStream : uint64_t { kNoiseStream = 1, kThetaStream = 2 };

struct EstimationProblem {
  const PlantModel* model = nullptr;
  DenseTrajectory u;  // control over the experiment span
  Eigen::VectorXd x0;
  IntegratorConfig integrator;

  TimeSpan span() const { return {u.t0(), u.tf()}; }
};

// Outputs y(t_i) simulated with the same augmented system the derivatives use,
// so noiseless data is reproduced bit-for-bit at the generating parameters.
std::vector<Eigen::VectorXd> simulate_outputs(const EstimationProblem& prob,
                                              const Eigen::VectorXd& theta,
                                              const std::vector<double>& times);

double ls_cost(const EstimationProblem& prob, const Eigen::VectorXd& theta,
               const MeasurementSet& meas);

struct LsDerivatives {
  double cost = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Eigen::MatrixXd gauss_newton;  // sum Gamma^T W Gamma
};

LsDerivatives ls_derivatives(const EstimationProblem& prob, const Eigen::VectorXd& theta,
                             const MeasurementSet& meas);

struct EstimatorOptions {
  double tol = 1e-8;
  int max_iter = 100;
  double c1 = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
};

enum class StepKind { kGradient, kNewton };

struct EstimationResult {
  Eigen::VectorXd theta_hat;
  std::vector<double> cost_trace;       // beta at every iterate, starting with theta0
  std::vector<double> grad_norm_trace;  // matches cost_trace
  std::vector<StepKind> step_kinds;
  std::vector<double> step_sizes;
  int iterations = 0;
  bool converged = false;
  std::string status;  // "converged", "LinesearchFailed" or "MaxIterExceeded"
};

EstimationResult estimate(const EstimationProblem& prob, const Eigen::VectorXd& theta0,
                          const MeasurementSet& meas, const EstimatorOptions& opts = {});

MeasurementSet synthesize_measurements(const EstimationProblem& prob,
                                       const Eigen::VectorXd& theta_true, double rate_hz,
                                       const MeasurementNoise& sigma, uint64_t seed,
                                       uint64_t trial = 0);

using ThetaSampler = std::function<Eigen::VectorXd(std::mt19937_64&)>;

// theta_true scaled by independent factors (1 + U(-spread, spread)).
ThetaSampler uniform_relative_sampler(const Eigen::VectorXd& theta_true, double spread);

struct TrialResult {
  int trial = 0;
  bool ok = false;  // finished without a numerical exception
  EstimationResult estimate;
  Eigen::VectorXd theta0;
  std::string error;
};

struct MonteCarloReport {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::vector<TrialResult> trials;
  int used = 0;    // trials contributing to the statistics
  int failed = 0;  // trials that threw
  int unconverged = 0;
};

struct MonteCarloOptions {
  int trials = 100;
  double rate_hz = 30.0;
  uint64_t seed = 0;
  int threads = 0;  // 0: FIMAX_THREADS or hardware concurrency
  EstimatorOptions estimator;
};

MonteCarloReport monte_carlo(const EstimationProblem& prob, const Eigen::VectorXd& theta_true,
                             const ThetaSampler& sampler, const MeasurementNoise& sigma,
                             const MonteCarloOptions& opts);

// Thread count from FIMAX_THREADS, else hardware concurrency, at least 1.
int worker_threads(int requested = 0);

}  // namespace fimax

#endif  // FIMAX_ESTIMATION_HPP_
