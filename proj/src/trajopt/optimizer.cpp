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

#include <chrono>
#include <cmath>

#include "fimax/error.hpp"
#include "fimax/trajopt.hpp"
#include "io/format.hpp"

namespace fimax {
namespace {

// (1/T) * integral |u|^2 for a piecewise-linear u, exact per segment.
double MeanSquare(const DenseTrajectory& u, TimeSpan span) {
  double acc = 0.0;
  const auto& t = u.times();
  for (size_t k = 0; k + 1 < t.size(); ++k) {
    const double lo = std::max(t[k], span.t0), hi = std::min(t[k + 1], span.tf);
    if (!(hi > lo)) continue;
    const Eigen::VectorXd a = u.eval(lo), b = u.eval(hi);
    acc += (hi - lo) * (a.squaredNorm() + a.dot(b) + b.squaredNorm()) / 3.0;
  }
  return acc / span.length();
}

}  // namespace

OptimizerResult optimize(const TrajectoryProblem& prob, const ExtendedTrajectory& eta0,
                         const OptimizerOptions& opts) {
  prob.validate();
  if (!(opts.tol > 0) || opts.max_iter < 0) {
    throw Error(ErrorCode::kInvalidArgument, "optimizer needs tol > 0 and max_iter >= 0");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> grid = prob.control_grid();
  const Weights& w = prob.weights;

  OptimizerResult res;
  res.eta = eta0;
  ObjectiveValue value = objective(prob, res.eta);
  for (int iter = 0;; ++iter) {
    IterationRecord rec;
    rec.iter = iter;
    rec.J = value.J;
    rec.lambda_min = value.info.lambda_min();
    rec.lambda_max = value.info.lambda_max();

    MinEigenpair pair;
    if (w.Q_p > 0) {
      pair = min_eigenpair(value.info);
    } else {
      pair.lambda = rec.lambda_min;
      pair.left = pair.right = value.info.right_eigvecs().col(0);
    }
    const CostGradientFn ab = cost_linearization(prob, res.eta, pair);
    const LinearizationFn AB = dynamics_linearization(prob, res.eta);
    Eigen::MatrixXd R_n = w.R_n;
    if (opts.metric == MetricScaling::kInformation && w.Q_p > 0) {
      // Curvature of Q_p / lambda along the amplitude of u when lambda grows
      // with the square of the amplitude.
      const double ms = MeanSquare(res.eta.u, prob.span);
      if (ms > 0) {
        R_n.diagonal().array() += 6.0 * w.Q_p / (prob.span.length() * rec.lambda_min * ms);
      }
    }
    const DescentDirection zeta =
        descent_direction(ab, AB, w.Q_n, R_n, prob.span, prob.integrator, grid);
    rec.dJ_zeta = zeta.dJ_zeta;

    auto finish = [&](const char* status, bool converged) {
      if (opts.record_wall_time) {
        rec.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      res.trace.push_back(rec);
      res.status = status;
      res.converged = converged;
    };
    if (std::abs(zeta.dJ_zeta) <= opts.tol) {
      finish("converged", true);
      break;
    }
    if (iter >= opts.max_iter) {
      finish("MaxIterExceeded", false);
      break;
    }
    const FeedbackGain K = feedback_gain(AB, w.Q_K, w.R_K, prob.span, prob.integrator, grid);
    ArmijoResult step;
    try {
      step = armijo_step(prob, res.eta, zeta, value.J, K, opts.armijo);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLinesearchFailed) throw;
      finish("LinesearchFailed", false);
      break;
    }
    rec.gamma = step.gamma;
    if (opts.record_wall_time) {
      rec.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    res.trace.push_back(rec);
    res.eta = std::move(step.eta);
    value = std::move(step.value);
    ++res.iterations;
  }
  return res;
}

std::string trace_to_csv(const std::vector<IterationRecord>& trace) {
  std::string out = "iter,J,lambda_min,lambda_max,dJ_zeta,gamma,wall_time_s\n";
  for (const auto& r : trace) {
    out += std::to_string(r.iter);
    for (double v : {r.J, r.lambda_min, r.lambda_max, r.dJ_zeta, r.gamma, r.wall_time_s}) {
      out += ',' + io::FormatDouble(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace fimax
