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

#include <cmath>
#include <numbers>

#include "fimax/error.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {

ExtendedTrajectory project(const TrajectoryProblem& prob, const CurveFn& alpha,
                           const DenseTrajectory& mu, const FeedbackGain& K) {
  const PlantModel& model = *prob.model;
  const int n = prob.n(), p = prob.p(), m = prob.m(), N = prob.extended_dim();
  if (mu.dim() != m || K.m != m || K.N != N) {
    throw Error(ErrorCode::kDimensionMismatch, "projection inputs do not match the problem");
  }

  Eigen::VectorXd al(N), mv(m);
  auto closed_loop_input = [&](double t, const Eigen::VectorXd& xbar) {
    alpha(t, al);
    mu.eval(t, mv);
    return Eigen::VectorXd(mv + K.at(t) * (al - xbar));
  };

  DynamicsDerivatives d;
  Eigen::VectorXd x(n), f(n);
  Eigen::MatrixXd psi(n, p), dpsi(n, p);
  auto field = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    const Eigen::VectorXd u = closed_loop_input(t, z);
    x = z.head(n);
    model.dynamics(x, u, prob.theta, f);
    model.dynamics_derivatives(x, u, prob.theta, DerivativeOrder::kFirst, d);
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < p; ++j) psi(a, j) = z[n + a * p + j];
    }
    dpsi.noalias() = d.fx * psi;
    dpsi += d.ftheta;
    dz.resize(N);
    dz.head(n) = f;
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < p; ++j) dz[n + a * p + j] = dpsi(a, j);
    }
  };
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(N);
  z0.head(n) = prob.x0;
  std::vector<double> grid = prob.control_grid();
  const DenseTrajectory closed = integrate(field, z0, prob.span, prob.integrator, grid);

  // The closed loop lands on every grid time, so these are knot values.
  std::vector<Eigen::VectorXd> us;
  us.reserve(grid.size());
  for (double t : grid) us.push_back(closed_loop_input(t, closed.eval(t)));
  return simulate_extended(prob, DenseTrajectory::Linear(std::move(grid), us));
}

ExtendedTrajectory project_step(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                const DescentDirection& zeta, double gamma,
                                const FeedbackGain& K) {
  Eigen::VectorXd xz, zz;
  CurveFn alpha = [&](double t, Eigen::VectorXd& out) {
    eta.xbar.eval(t, xz);
    zeta.z.eval(t, zz);
    out = xz + gamma * zz;
  };
  const DenseTrajectory mu = control_on_grid(
      prob, [&](double t) { return Eigen::VectorXd(eta.u.eval(t) + gamma * zeta.v.eval(t)); });
  return project(prob, alpha, mu, K);
}

ArmijoResult armijo_step(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                         const DescentDirection& zeta, double J_current,
                         const FeedbackGain& K, const ArmijoOptions& opts) {
  if (!(zeta.dJ_zeta < 0)) {
    throw Error(ErrorCode::kLinesearchFailed, "direction is not a descent direction (DJ = " +
                                                  std::to_string(zeta.dJ_zeta) + ")");
  }
  double gamma = 1.0;
  for (int j = 0; j <= opts.max_backtracks; ++j, gamma *= opts.backtrack) {
    ArmijoResult res;
    try {
      res.eta = project_step(prob, eta, zeta, gamma, K);
      res.value = objective(prob, res.eta);
    } catch (const Error& e) {
      // Failed projections count as infinite cost.
      if (!IsNumericalError(e.code())) throw;
      continue;
    }
    if (res.value.J <= J_current + opts.c1 * gamma * zeta.dJ_zeta) {
      res.gamma = gamma;
      res.backtracks = j;
      return res;
    }
  }
  throw Error(ErrorCode::kLinesearchFailed,
              "no sufficient decrease after " + std::to_string(opts.max_backtracks) + " backtracks");
}

ExtendedTrajectory perturb_initial(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                   double amplitude, double frequency_hz, double threshold) {
  if (amplitude == 0.0) return eta;
  const double w = 2.0 * std::numbers::pi * frequency_hz;
  const double t0 = prob.span.t0;
  const DenseTrajectory u = control_on_grid(prob, [&](double t) {
    return Eigen::VectorXd(eta.u.eval(t).array() + amplitude * std::sin(w * (t - t0)));
  });
  ExtendedTrajectory out = simulate_extended(prob, u);
  const InfoMatrix info = trajectory_information(prob, out);
  const IdentifiabilityReport id = identifiability_check(info, threshold);
  if (!id.identifiable || !(info.lambda_min() > info.singularity_threshold())) {
    std::string dir;
    for (Eigen::Index i = 0; i < info.right_eigvecs().rows(); ++i) {
      dir += (i ? ", " : "") + std::to_string(info.right_eigvecs()(i, 0));
    }
    throw Error(ErrorCode::kStillSingular,
                "information stays singular after perturbation (lambda_min/lambda_max = " +
                    std::to_string(id.ratio) + ", direction [" + dir +
                    "]); add sensors or remove an unknown parameter");
  }
  return out;
}

}  // namespace fimax
