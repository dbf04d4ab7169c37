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

#include "fimax/error.hpp"
#include "fimax/trajopt.hpp"

namespace fimax {
namespace {

void CheckLq(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R) {
  if (Q.rows() != Q.cols() || R.rows() != R.cols() || R.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "LQ weights must be square");
  }
}

// Runs fn, converting non-finite integration failures into kRiccatiBlowup.
template <typename Fn>
auto GuardBlowup(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNonFiniteState || e.code() == ErrorCode::kStepUnderflow) {
      throw Error(ErrorCode::kRiccatiBlowup, std::string("Riccati solve diverged: ") + e.what());
    }
    throw;
  }
}

}  // namespace

Eigen::MatrixXd FeedbackGain::at(double t) const {
  const Eigen::VectorXd flat = K.eval(t);
  Eigen::MatrixXd out(m, N);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < N; ++j) out(i, j) = flat[i * N + j];
  }
  return out;
}

FeedbackGain FeedbackGain::Zero(int m, int N, TimeSpan span) {
  FeedbackGain g;
  g.m = m;
  g.N = N;
  Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(m * N, 2);
  g.K = DenseTrajectory::Linear({span.t0, span.tf}, zeros);
  return g;
}

FeedbackGain feedback_gain(const LinearizationFn& AB, const Eigen::MatrixXd& Q_K,
                           const Eigen::MatrixXd& R_K, TimeSpan span,
                           const IntegratorConfig& cfg, std::span<const double> breakpoints) {
  CheckLq(Q_K, R_K);
  const int N = static_cast<int>(Q_K.rows()), m = static_cast<int>(R_K.rows());
  const Eigen::LLT<Eigen::MatrixXd> r_llt(R_K);
  if (r_llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "R_K must be positive definite");
  }
  Eigen::MatrixXd A, B;
  auto field = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    AB(t, A, B);
    if (A.rows() != N || B.rows() != N || B.cols() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "linearization does not match the LQ weights");
    }
    Eigen::Map<const Eigen::MatrixXd> P(z.data(), N, N);
    const Eigen::MatrixXd PB = P * B;
    Eigen::MatrixXd rhs = A.transpose() * P + P * A - PB * r_llt.solve(PB.transpose()) + Q_K;
    rhs = 0.5 * (rhs + rhs.transpose()).eval();
    dz.resize(N * N);
    Eigen::Map<Eigen::MatrixXd>(dz.data(), N, N) = -rhs;
  };
  const DenseTrajectory P = GuardBlowup([&] {
    return integrate(field, Eigen::VectorXd::Zero(N * N), {span.tf, span.t0}, cfg, breakpoints);
  });

  Eigen::MatrixXd samples(m * N, static_cast<Eigen::Index>(P.size()));
  for (size_t k = 0; k < P.size(); ++k) {
    const Eigen::VectorXd pv = P.value(k);
    if (!pv.allFinite()) throw Error(ErrorCode::kRiccatiBlowup, "Riccati solution is not finite");
    Eigen::Map<const Eigen::MatrixXd> Pk(pv.data(), N, N);
    AB(P.times()[k], A, B);
    const Eigen::MatrixXd K = r_llt.solve(B.transpose() * Pk);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < N; ++j) samples(i * N + j, static_cast<Eigen::Index>(k)) = K(i, j);
    }
  }
  FeedbackGain g;
  g.m = m;
  g.N = N;
  g.K = DenseTrajectory::Linear(P.times(), samples);
  return g;
}

DescentDirection descent_direction(const CostGradientFn& ab, const LinearizationFn& AB,
                                   const Eigen::MatrixXd& Q_n, const Eigen::MatrixXd& R_n,
                                   TimeSpan span, const IntegratorConfig& cfg,
                                   std::span<const double> breakpoints) {
  CheckLq(Q_n, R_n);
  const int N = static_cast<int>(Q_n.rows()), m = static_cast<int>(R_n.rows());
  const Eigen::LLT<Eigen::MatrixXd> r_llt(R_n);
  if (r_llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "R_n must be positive definite");
  }
  const int np = N * N;
  Eigen::MatrixXd A, B;
  Eigen::RowVectorXd a, b;

  // Backward sweep for P and the affine term r.
  auto backward = [&](double t, const Eigen::VectorXd& z, Eigen::VectorXd& dz) {
    AB(t, A, B);
    ab(t, a, b);
    if (A.rows() != N || B.cols() != m || a.size() != N || b.size() != m) {
      throw Error(ErrorCode::kDimensionMismatch, "linearization does not match the LQ weights");
    }
    Eigen::Map<const Eigen::MatrixXd> P(z.data(), N, N);
    Eigen::Map<const Eigen::VectorXd> r(z.data() + np, N);
    const Eigen::MatrixXd PB = P * B;
    const Eigen::MatrixXd gain = r_llt.solve(PB.transpose());  // R^-1 B^T P
    Eigen::MatrixXd rhs = A.transpose() * P + P * A - PB * gain + Q_n;
    rhs = 0.5 * (rhs + rhs.transpose()).eval();
    dz.resize(np + N);
    Eigen::Map<Eigen::MatrixXd>(dz.data(), N, N) = -rhs;
    const Eigen::VectorXd rdot =
        -((A - B * gain).transpose() * r + a.transpose() - PB * r_llt.solve(b.transpose()));
    dz.tail(N) = rdot;
  };
  const DenseTrajectory Pr = GuardBlowup([&] {
    return integrate(backward, Eigen::VectorXd::Zero(np + N), {span.tf, span.t0}, cfg,
                     breakpoints);
  });

  Eigen::VectorXd pr;
  auto control = [&](double t, const Eigen::VectorXd& z) -> Eigen::VectorXd {
    Pr.eval(t, pr);
    Eigen::Map<const Eigen::MatrixXd> P(pr.data(), N, N);
    Eigen::Map<const Eigen::VectorXd> r(pr.data() + np, N);
    return -r_llt.solve(B.transpose() * (P * z + r) + b.transpose());
  };
  auto forward = [&](double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
    AB(t, A, B);
    ab(t, a, b);
    const Eigen::VectorXd z = s.head(N);
    const Eigen::VectorXd v = control(t, z);
    ds.resize(N + 1);
    ds.head(N) = A * z + B * v;
    ds[N] = a.dot(z) + b.dot(v);
  };
  const DenseTrajectory zq = GuardBlowup([&] {
    return integrate(forward, Eigen::VectorXd::Zero(N + 1), span, cfg, breakpoints);
  });

  DescentDirection out;
  out.z = zq.block(0, N);
  Eigen::MatrixXd vs(m, static_cast<Eigen::Index>(zq.size()));
  for (size_t k = 0; k < zq.size(); ++k) {
    const double t = zq.times()[k];
    AB(t, A, B);
    ab(t, a, b);
    vs.col(static_cast<Eigen::Index>(k)) = control(t, zq.value(k).head(N));
  }
  out.v = DenseTrajectory::Linear(zq.times(), vs);
  out.dJ_zeta = zq.value(zq.size() - 1)[N];
  return out;
}

DescentDirection project_variation(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                   const DenseTrajectory& dv, const CostGradientFn& ab) {
  const int N = prob.extended_dim();
  if (dv.dim() != prob.m()) throw Error(ErrorCode::kDimensionMismatch, "variation size");
  const LinearizationFn AB = dynamics_linearization(prob, eta);
  Eigen::MatrixXd A, B;
  Eigen::RowVectorXd a, b;
  Eigen::VectorXd v;
  auto field = [&](double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
    AB(t, A, B);
    dv.eval(t, v);
    const Eigen::VectorXd z = s.head(N);
    ds.resize(N + 1);
    ds.head(N) = A * z + B * v;
    ds[N] = 0.0;
    if (ab) {
      ab(t, a, b);
      ds[N] = a.dot(z) + b.dot(v);
    }
  };
  const std::vector<double> grid = prob.control_grid();
  const DenseTrajectory zq =
      integrate(field, Eigen::VectorXd::Zero(N + 1), prob.span, prob.integrator, grid);
  DescentDirection out;
  out.z = zq.block(0, N);
  out.v = dv;
  out.dJ_zeta = zq.value(zq.size() - 1)[N];
  return out;
}

}  // namespace fimax
