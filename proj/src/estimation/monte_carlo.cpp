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

#include <atomic>
#include <cstdlib>
#include <thread>

#include "fimax/error.hpp"
#include "fimax/estimation.hpp"

namespace fimax {

int worker_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("FIMAX_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(n, 1);
}

ThetaSampler uniform_relative_sampler(const Eigen::VectorXd& theta_true, double spread) {
  return [theta_true, spread](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    Eigen::VectorXd out = theta_true;
    for (auto& v : out) v *= 1.0 + dist(rng);
    return out;
  };
}

MonteCarloReport monte_carlo(const EstimationProblem& prob, const Eigen::VectorXd& theta_true,
                             const ThetaSampler& sampler, const MeasurementNoise& sigma,
                             const MonteCarloOptions& opts) {
  if (opts.trials < 2) throw Error(ErrorCode::kInvalidArgument, "monte carlo needs >= 2 trials");
  if (!sampler) throw Error(ErrorCode::kInvalidArgument, "missing theta0 sampler");

  MonteCarloReport report;
  report.trials.resize(opts.trials);

  auto run_trial = [&](int k) {
    TrialResult& tr = report.trials[k];
    tr.trial = k;
    try {
      std::mt19937_64 rng = make_stream(opts.seed, k, kThetaStream);
      tr.theta0 = sampler(rng);
      const MeasurementSet meas =
          synthesize_measurements(prob, theta_true, opts.rate_hz, sigma, opts.seed, k);
      tr.estimate = estimate(prob, tr.theta0, meas, opts.estimator);
      tr.ok = tr.estimate.theta_hat.allFinite();
      if (!tr.ok) tr.error = "non-finite estimate";
    } catch (const Error& e) {
      tr.ok = false;
      tr.error = e.what();
    }
  };

  const int threads = std::min(worker_threads(opts.threads), opts.trials);
  if (threads <= 1) {
    for (int k = 0; k < opts.trials; ++k) run_trial(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (int k = next++; k < opts.trials; k = next++) run_trial(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Statistics in trial order so the result does not depend on scheduling.
  const int p = static_cast<int>(theta_true.size());
  report.mean = Eigen::VectorXd::Zero(p);
  report.covariance = Eigen::MatrixXd::Zero(p, p);
  for (const auto& tr : report.trials) {
    if (!tr.ok) {
      ++report.failed;
      continue;
    }
    if (!tr.estimate.converged) ++report.unconverged;
    ++report.used;
    report.mean += tr.estimate.theta_hat;
  }
  if (report.used == 0) return report;
  report.mean /= report.used;
  if (report.used < 2) return report;
  for (const auto& tr : report.trials) {
    if (!tr.ok) continue;
    const Eigen::VectorXd d = tr.estimate.theta_hat - report.mean;
    report.covariance += d * d.transpose();
  }
  report.covariance /= report.used - 1;
  return report;
}

}  // namespace fimax
