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

#include <sstream>

#include "fimax/error.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {
namespace {

struct Quadrature {
  Eigen::MatrixXd info;
  double running = 0.0;
};

Eigen::VectorXd Reference(const TrajectoryProblem& prob, double t) {
  if (prob.x_desired.empty()) return Eigen::VectorXd::Zero(prob.n());
  return prob.x_desired.eval(t);
}

Eigen::MatrixXd Weight(const MeasurementNoise& sigma) { return sigma.inverse(); }

Quadrature Integrate(const TrajectoryProblem& prob, const ExtendedTrajectory& eta) {
  const PlantModel& model = *prob.model;
  const int n = prob.n(), p = prob.p();
  const int nv = p * (p + 1) / 2;
  const Eigen::MatrixXd w = Weight(prob.sigma);
  const Weights& wt = prob.weights;
  OutputDerivatives od;
  Eigen::VectorXd xbar, u;
  Eigen::MatrixXd psi(n, p);
  auto field = [&](double t, const Eigen::VectorXd&, Eigen::VectorXd& dz) {
    eta.xbar.eval(t, xbar);
    eta.u.eval(t, u);
    const Eigen::VectorXd x = xbar.head(n);
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < p; ++j) psi(a, j) = xbar[n + a * p + j];
    }
    model.output_derivatives(x, u, prob.theta, od);
    const Eigen::MatrixXd gamma = od.gx * psi + od.gtheta;
    const Eigen::MatrixXd m = gamma.transpose() * w * gamma;
    dz.resize(nv + 1);
    int k = 0;
    for (int j = 0; j < p; ++j) {
      for (int i = j; i < p; ++i) dz[k++] = m(i, j);
    }
    const Eigen::VectorXd e = x - Reference(prob, t);
    dz[nv] = 0.5 * (e.dot(wt.Q_tau * e) + u.dot(wt.R_tau * u));
  };
  const std::vector<double> grid = prob.control_grid();
  const DenseTrajectory q =
      integrate(field, Eigen::VectorXd::Zero(nv + 1), prob.span, prob.integrator, grid);
  const Eigen::VectorXd v = q.value(q.size() - 1);
  Quadrature out;
  out.info.resize(p, p);
  int k = 0;
  for (int j = 0; j < p; ++j) {
    for (int i = j; i < p; ++i) {
      out.info(i, j) = v[k];
      out.info(j, i) = v[k];
      ++k;
    }
  }
  out.running = v[nv];
  return out;
}

}  // namespace

InfoMatrix trajectory_information(const TrajectoryProblem& prob, const ExtendedTrajectory& eta) {
  return InfoMatrix(Integrate(prob, eta).info, InfoKind::kContinuous);
}

ObjectiveValue objective(const TrajectoryProblem& prob, const ExtendedTrajectory& eta) {
  const Quadrature q = Integrate(prob, eta);
  ObjectiveValue out;
  out.info = InfoMatrix(q.info, InfoKind::kContinuous);
  out.running_term = q.running;
  if (prob.weights.Q_p > 0) {
    if (!(out.info.lambda_min() > out.info.singularity_threshold())) {
      std::ostringstream msg;
      msg << "objective undefined: lambda_min = " << out.info.lambda_min()
          << ", weakest direction [" << out.info.right_eigvecs().col(0).transpose() << "]";
      throw SingularInformationError(msg.str(), out.info.right_eigvecs().col(0));
    }
    out.information_term = prob.weights.Q_p / out.info.lambda_min();
  }
  out.J = out.information_term + out.running_term;
  if (!std::isfinite(out.J)) throw Error(ErrorCode::kNonFiniteResult, "objective is not finite");
  return out;
}

CostGradientFn cost_linearization(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                  const MinEigenpair& pair) {
  const int n = prob.n(), p = prob.p(), N = prob.extended_dim();
  const Eigen::MatrixXd w = Weight(prob.sigma);
  // -Q_p / lambda^2 times the derivative of nu^T Gamma^T W Gamma nu.
  const double scale = prob.weights.Q_p > 0 ? -prob.weights.Q_p / (pair.lambda * pair.lambda) : 0.0;
  const Eigen::VectorXd nu = pair.right;
  return [&prob, &eta, n, p, N, w, scale, nu](double t, Eigen::RowVectorXd& a,
                                                Eigen::RowVectorXd& b) {
    const PlantModel& model = *prob.model;
    const Eigen::VectorXd xbar = eta.xbar.eval(t);
    const Eigen::VectorXd u = eta.u.eval(t);
    const Eigen::VectorXd x = xbar.head(n);
    a.setZero(N);
    const Eigen::VectorXd e = x - Reference(prob, t);
    a.head(n) = (prob.weights.Q_tau * e).transpose();
    b = (prob.weights.R_tau * u).transpose();
    if (scale == 0.0) return;

    Eigen::MatrixXd psi(n, p);
    for (int c = 0; c < n; ++c) {
      for (int j = 0; j < p; ++j) psi(c, j) = xbar[n + c * p + j];
    }
    OutputDerivatives od;
    model.output_derivatives(x, u, prob.theta, od);
    const Eigen::MatrixXd gamma = od.gx * psi + od.gtheta;
    const Eigen::VectorXd s = w * (gamma * nu);  // W Gamma nu
    const int h = static_cast<int>(gamma.rows());

    // State block: dGamma/dx_c (r, j) = g_xx(r, q, c) psi(q, j) + g_xtheta(r, c, j).
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int r = 0; r < h; ++r) {
        if (s[r] == 0.0) continue;
        double dg_nu = 0.0;
        for (int j = 0; j < p; ++j) {
          double dg = od.gxtheta(r, c, j);
          for (int q = 0; q < n; ++q) dg += od.gxx(r, q, c) * psi(q, j);
          dg_nu += dg * nu[j];
        }
        acc += s[r] * dg_nu;
      }
      a[c] += scale * 2.0 * acc;
    }
    // Psi block: dGamma/dpsi(q, k) (r, j) = g_x(r, q) delta_jk.
    for (int q = 0; q < n; ++q) {
      const double gs = od.gx.col(q).dot(s);
      for (int k = 0; k < p; ++k) a[n + q * p + k] += scale * 2.0 * gs * nu[k];
    }
  };
}

}  // namespace fimax
