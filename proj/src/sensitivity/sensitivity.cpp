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

#include <algorithm>

#include "fimax/error.hpp"
#include "fimax/sensitivity.hpp"

namespace fimax {

Eigen::MatrixXd UnpackPsi(const Eigen::VectorXd& flat, int n, int p) {
  Eigen::MatrixXd psi(n, p);
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < p; ++j) psi(a, j) = flat[a * p + j];
  }
  return psi;
}

Tensor3 UnpackOmega(const Eigen::VectorXd& flat, int n, int p) {
  Tensor3 omega(n, p, p);
  std::copy(flat.data(), flat.data() + omega.size(), omega.data());
  return omega;
}

Eigen::MatrixXd SensitivityBundle::psi_at(double t) const { return UnpackPsi(psi.eval(t), n, p); }

Tensor3 SensitivityBundle::omega_at(double t) const {
  if (!has_omega()) throw Error(ErrorCode::kInvalidArgument, "bundle has no second-order terms");
  return UnpackOmega(omega.eval(t), n, p);
}

std::vector<double> merged_breakpoints(const DenseTrajectory& u, TimeSpan span,
                                       std::span<const double> extra) {
  const double lo = std::min(span.t0, span.tf), hi = std::max(span.t0, span.tf);
  std::vector<double> out;
  for (double t : u.times()) {
    if (t > lo && t < hi) out.push_back(t);
  }
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void CheckInputs(const PlantModel& model, const Eigen::VectorXd& x0, const DenseTrajectory& u,
                 const Eigen::VectorXd& theta, TimeSpan span) {
  if (x0.size() != model.state_dim() || theta.size() != model.param_dim() ||
      u.dim() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "sensitivity inputs do not match the model");
  }
  const double lo = std::min(span.t0, span.tf), hi = std::max(span.t0, span.tf);
  if (u.empty() || lo < u.t0() || hi > u.tf()) {
    throw Error(ErrorCode::kOutOfDomain, "control trajectory does not cover the span");
  }
}

}  // namespace

SensitivityBundle propagate(const PlantModel& model, const Eigen::VectorXd& x0,
                            const DenseTrajectory& u, const Eigen::VectorXd& theta,
                            TimeSpan span, bool second_order, const IntegratorConfig& cfg,
                            std::span<const double> breakpoints) {
  CheckInputs(model, x0, u, theta, span);
  const int n = model.state_dim(), p = model.param_dim();
  const int np = n * p, npp = n * p * p;
  const int dim = n + np + (second_order ? npp : 0);
  const DerivativeOrder order = second_order ? DerivativeOrder::kSecond : DerivativeOrder::kFirst;

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(dim);
  z0.head(n) = x0;

  DynamicsDerivatives d;
  Eigen::VectorXd uu(model.input_dim()), x(n), f(n);
  Eigen::MatrixXd psi(n, p), dpsi(n, p);
  auto field = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    u.eval(t, uu);
    x = z.head(n);
    model.dynamics(x, uu, theta, f);
    model.dynamics_derivatives(x, uu, theta, order, d);
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < p; ++j) psi(a, j) = z[n + a * p + j];
    }
    dpsi.noalias() = d.fx * psi;
    dpsi += d.ftheta;
    dz.resize(dim);
    dz.head(n) = f;
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < p; ++j) dz[n + a * p + j] = dpsi(a, j);
    }
    if (!second_order) return;

    const double* om = z.data() + n + np;
    double* dom = dz.data() + n + np;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
          double acc = d.fthetatheta(i, j, k);
          for (int a = 0; a < n; ++a) {
            // (f_xx psi_k + f_x theta_k) psi_j
            double inner = d.fxtheta(i, a, k);
            for (int b = 0; b < n; ++b) inner += d.fxx(i, a, b) * psi(b, k);
            acc += inner * psi(a, j);
            acc += d.fx(i, a) * om[(a * p + j) * p + k];
            acc += d.fxtheta(i, a, j) * psi(a, k);
          }
          dom[(i * p + j) * p + k] = acc;
        }
      }
    }
  };

  const std::vector<double> bps = merged_breakpoints(u, span, breakpoints);
  DenseTrajectory all = integrate(field, z0, span, cfg, bps);

  SensitivityBundle out;
  out.n = n;
  out.p = p;
  out.state = all.block(0, n);
  out.psi = all.block(n, np);
  if (second_order) out.omega = all.block(n + np, npp);
  return out;
}

DenseTrajectory propagate_first(const PlantModel& model, const DenseTrajectory& x_traj,
                                const DenseTrajectory& u, const Eigen::VectorXd& theta,
                                const IntegratorConfig& cfg) {
  if (x_traj.empty()) throw Error(ErrorCode::kInvalidArgument, "empty state trajectory");
  return propagate(model, x_traj.value(0), u, theta, {x_traj.t0(), x_traj.tf()}, false, cfg).psi;
}

DenseTrajectory propagate_second(const PlantModel& model, const DenseTrajectory& x_traj,
                                 const DenseTrajectory& u, const Eigen::VectorXd& theta,
                                 const DenseTrajectory& psi, const IntegratorConfig& cfg) {
  if (x_traj.empty()) throw Error(ErrorCode::kInvalidArgument, "empty state trajectory");
  if (psi.dim() != model.state_dim() * model.param_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "psi has the wrong dimension");
  }
  return propagate(model, x_traj.value(0), u, theta, {x_traj.t0(), x_traj.tf()}, true, cfg)
      .omega;
}

Eigen::MatrixXd output_sensitivity(const PlantModel& model, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& u, const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& psi) {
  if (psi.rows() != model.state_dim() || psi.cols() != model.param_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "psi must be n x p");
  }
  OutputDerivatives od;
  model.output_derivatives(x, u, theta, od);
  return od.gx * psi + od.gtheta;
}

}  // namespace fimax
