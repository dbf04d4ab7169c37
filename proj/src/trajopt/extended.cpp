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

#include <Eigen/Eigenvalues>

#include "fimax/error.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {
namespace {

bool IsPsd(const Eigen::MatrixXd& m, bool strict) {
  if (m.rows() != m.cols()) return false;
  if (!m.allFinite()) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()[0];
  return strict ? lmin > 0 : lmin >= -1e-12 * scale;
}

void CheckWeight(const Eigen::MatrixXd& m, int dim, bool strict, const char* name) {
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!IsPsd(m, strict)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + (strict ? " must be positive definite"
                                            : " must be positive semi-definite"));
  }
}

}  // namespace

Weights Weights::Defaults(int n, int m, int p) {
  const int N = n + n * p;
  Weights w;
  w.Q_tau = Eigen::MatrixXd::Zero(n, n);
  w.R_tau = 0.1 * Eigen::MatrixXd::Identity(m, m);
  w.Q_n = Eigen::MatrixXd::Identity(N, N);
  w.R_n = Eigen::MatrixXd::Identity(m, m);
  w.Q_K = Eigen::MatrixXd::Zero(N, N);
  w.Q_K.topLeftCorner(n, n).setIdentity();
  w.R_K = Eigen::MatrixXd::Identity(m, m);
  return w;
}

void Weights::validate(int n, int m, int p) const {
  const int N = n + n * p;
  if (!(Q_p >= 0) || !std::isfinite(Q_p)) {
    throw Error(ErrorCode::kInvalidArgument, "Q_p must be a finite non-negative scalar");
  }
  CheckWeight(Q_tau, n, false, "Q_tau");
  CheckWeight(R_tau, m, true, "R_tau");
  CheckWeight(Q_n, N, false, "Q_n");
  CheckWeight(R_n, m, true, "R_n");
  CheckWeight(Q_K, N, false, "Q_K");
  CheckWeight(R_K, m, true, "R_K");
}

std::vector<double> TrajectoryProblem::control_grid() const {
  if (!(control_dt > 0) || !(span.tf > span.t0)) {
    throw Error(ErrorCode::kInvalidArgument, "control grid needs dt > 0 and tf > t0");
  }
  const long count = static_cast<long>(std::ceil(span.length() / control_dt - 1e-9));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (long k = 0; k < count; ++k) grid.push_back(span.t0 + static_cast<double>(k) * control_dt);
  grid.push_back(span.tf);
  return grid;
}

void TrajectoryProblem::validate() const {
  if (model == nullptr) throw Error(ErrorCode::kInvalidArgument, "trajectory problem has no model");
  if (theta.size() != p() || x0.size() != n()) {
    throw Error(ErrorCode::kDimensionMismatch, "theta or x0 does not match the model");
  }
  if (!(span.tf > span.t0)) throw Error(ErrorCode::kInvalidArgument, "horizon must be positive");
  if (sigma.dim() != model->output_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "noise covariance does not match the output");
  }
  if (!x_desired.empty() && (x_desired.dim() != n() || x_desired.t0() > span.t0 ||
                             x_desired.tf() < span.tf)) {
    throw Error(ErrorCode::kDimensionMismatch, "reference must be an n-dimensional curve on the span");
  }
  weights.validate(n(), m(), p());
  integrator.validate();
}

DenseTrajectory control_on_grid(const TrajectoryProblem& prob,
                                const std::function<Eigen::VectorXd(double)>& fn) {
  std::vector<double> grid = prob.control_grid();
  std::vector<Eigen::VectorXd> values;
  values.reserve(grid.size());
  for (double t : grid) {
    values.push_back(fn(t));
    if (values.back().size() != prob.m()) {
      throw Error(ErrorCode::kDimensionMismatch, "control sample has the wrong size");
    }
  }
  return DenseTrajectory::Linear(std::move(grid), values);
}

ExtendedTrajectory simulate_extended(const TrajectoryProblem& prob, const DenseTrajectory& u) {
  const PlantModel& model = *prob.model;
  const int n = prob.n(), p = prob.p(), N = prob.extended_dim();
  if (u.dim() != prob.m() || u.t0() > prob.span.t0 || u.tf() < prob.span.tf) {
    throw Error(ErrorCode::kDimensionMismatch, "control must cover the horizon");
  }
  DynamicsDerivatives d;
  Eigen::VectorXd uu, x(n), f(n);
  Eigen::MatrixXd psi(n, p), dpsi(n, p);
  auto field = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    u.eval(t, uu);
    x = z.head(n);
    model.dynamics(x, uu, prob.theta, f);
    model.dynamics_derivatives(x, uu, prob.theta, DerivativeOrder::kFirst, d);
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
  const std::vector<double> grid = prob.control_grid();
  ExtendedTrajectory eta;
  eta.xbar = integrate(field, z0, prob.span, prob.integrator, grid);
  eta.u = u;
  eta.feasible = true;
  return eta;
}

void extended_linearization(const PlantModel& model, const Eigen::VectorXd& xbar,
                            const Eigen::VectorXd& u, const Eigen::VectorXd& theta,
                            Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
  const int n = model.state_dim(), m = model.input_dim(), p = model.param_dim();
  const int N = n + n * p;
  if (xbar.size() != N) throw Error(ErrorCode::kDimensionMismatch, "extended state size");
  DynamicsDerivatives d;
  const Eigen::VectorXd x = xbar.head(n);
  model.dynamics_derivatives(x, u, theta, DerivativeOrder::kSecond, d);
  A.setZero(N, N);
  B.setZero(N, m);
  A.topLeftCorner(n, n) = d.fx;
  B.topRows(n) = d.fu;
  auto psi = [&](int b, int j) { return xbar[n + b * p + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      const int row = n + i * p + j;
      for (int a = 0; a < n; ++a) {
        double s = d.fxtheta(i, a, j);
        for (int b = 0; b < n; ++b) s += d.fxx(i, b, a) * psi(b, j);
        A(row, a) = s;
        // f_x (x) E: d(psi_dot(i, j)) / d psi(b, j) = f_x(i, b).
        A(row, n + a * p + j) = d.fx(i, a);
      }
      for (int c = 0; c < m; ++c) {
        double s = d.fthetau(i, j, c);
        for (int b = 0; b < n; ++b) s += d.fxu(i, b, c) * psi(b, j);
        B(row, c) = s;
      }
    }
  }
}

LinearizationFn dynamics_linearization(const TrajectoryProblem& prob,
                                       const ExtendedTrajectory& eta) {
  return [&prob, &eta](double t, Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
    extended_linearization(*prob.model, eta.xbar.eval(t), eta.u.eval(t), prob.theta, A, B);
  };
}

}  // namespace fimax
