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
#include <sstream>

#include <Eigen/Eigenvalues>
#include "json.hpp"

#include "fimax/error.hpp"
#include "fimax/information.hpp"
#include "fimax/sensitivity.hpp"
#include "io/format.hpp"

namespace fimax {
namespace {

void FixSign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

// Gamma^T Sigma^-1 Gamma at time t.
Eigen::MatrixXd Integrand(const PlantModel& model, const DenseTrajectory& x_traj,
                          const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                          const DenseTrajectory& psi, const Eigen::MatrixXd& sigma_inv,
                          double t) {
  const Eigen::VectorXd x = x_traj.eval(t);
  const Eigen::VectorXd u = u_traj.eval(t);
  const Eigen::MatrixXd gamma =
      output_sensitivity(model, x, u, theta, UnpackPsi(psi.eval(t), model.state_dim(),
                                                       model.param_dim()));
  return gamma.transpose() * sigma_inv * gamma;
}

void CheckShapes(const PlantModel& model, const DenseTrajectory& x_traj,
                 const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                 const DenseTrajectory& psi, const MeasurementNoise& sigma) {
  if (x_traj.dim() != model.state_dim() || u_traj.dim() != model.input_dim() ||
      theta.size() != model.param_dim() || psi.dim() != model.state_dim() * model.param_dim() ||
      sigma.dim() != model.output_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "information inputs do not match the model");
  }
}

}  // namespace

InfoMatrix::InfoMatrix(const Eigen::MatrixXd& matrix, InfoKind kind) : kind_(kind) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "information matrix must be square");
  }
  if (!matrix.allFinite()) throw Error(ErrorCode::kNonFiniteResult, "information matrix is not finite");
  matrix_ = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonFiniteResult, "eigen-decomposition failed");
  }
  eigvals_ = es.eigenvalues();
  eigvecs_ = es.eigenvectors();
  for (Eigen::Index c = 0; c < eigvecs_.cols(); ++c) FixSign(eigvecs_.col(c));
}

double InfoMatrix::singularity_threshold() const { return 1e-12 * std::max(trace(), 1.0); }

InfoMatrix fim_discrete(const PlantModel& model, const DenseTrajectory& x_traj,
                        const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                        const DenseTrajectory& psi, std::span<const double> times,
                        const MeasurementNoise& sigma) {
  CheckShapes(model, x_traj, u_traj, theta, psi, sigma);
  const Eigen::MatrixXd& w = sigma.inverse();
  const int p = model.param_dim();
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(p, p);
  for (double t : times) total += Integrand(model, x_traj, u_traj, theta, psi, w, t);
  return InfoMatrix(total, InfoKind::kDiscrete);
}

InfoMatrix fim_continuous(const PlantModel& model, const DenseTrajectory& x_traj,
                          const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                          const DenseTrajectory& psi, const MeasurementNoise& sigma,
                          const IntegratorConfig& cfg, std::span<const double> breakpoints) {
  CheckShapes(model, x_traj, u_traj, theta, psi, sigma);
  const Eigen::MatrixXd& w = sigma.inverse();
  const int p = model.param_dim();
  const int nv = p * (p + 1) / 2;
  // Quadrature over vech(Gamma^T W Gamma).
  auto field = [&](double t, const Eigen::VectorXd&, Eigen::VectorXd& dz) {
    const Eigen::MatrixXd m = Integrand(model, x_traj, u_traj, theta, psi, w, t);
    dz.resize(nv);
    int k = 0;
    for (int j = 0; j < p; ++j) {
      for (int i = j; i < p; ++i) dz[k++] = m(i, j);
    }
  };
  const TimeSpan span{x_traj.t0(), x_traj.tf()};
  const std::vector<double> bps = merged_breakpoints(u_traj, span, breakpoints);
  const DenseTrajectory q = integrate(field, Eigen::VectorXd::Zero(nv), span, cfg, bps);
  const Eigen::VectorXd v = q.value(q.size() - 1);
  Eigen::MatrixXd total(p, p);
  int k = 0;
  for (int j = 0; j < p; ++j) {
    for (int i = j; i < p; ++i) {
      total(i, j) = v[k];
      total(j, i) = v[k];
      ++k;
    }
  }
  return InfoMatrix(total, InfoKind::kContinuous);
}

Eigen::MatrixXd cramer_rao(const InfoMatrix& info) {
  if (!(info.lambda_min() > info.singularity_threshold())) {
    std::ostringstream msg;
    msg << "information matrix is singular (lambda_min = " << info.lambda_min()
        << "); unidentifiable parameter direction [" << info.right_eigvecs().col(0).transpose()
        << "]";
    throw SingularInformationError(msg.str(), info.right_eigvecs().col(0));
  }
  const int p = info.dim();
  Eigen::LLT<Eigen::MatrixXd> llt(info.matrix());
  Eigen::MatrixXd inv;
  if (llt.info() == Eigen::Success) {
    inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
  } else {
    const Eigen::VectorXd& l = info.eigenvalues();
    const Eigen::MatrixXd& v = info.right_eigvecs();
    inv = v * l.cwiseInverse().asDiagonal() * v.transpose();
  }
  return 0.5 * (inv + inv.transpose());
}

MinEigenpair min_eigenpair(const InfoMatrix& info) {
  const Eigen::VectorXd& l = info.eigenvalues();
  if (l.size() > 1) {
    const double gap_tol = 1e-9 * std::max(std::abs(info.lambda_max()), 1.0);
    if (l[1] - l[0] < gap_tol) {
      std::ostringstream msg;
      msg << "smallest eigenvalue is repeated (" << l[0] << ", " << l[1] << ")";
      throw Error(ErrorCode::kDegenerateEigenvalue, msg.str());
    }
  }
  MinEigenpair out;
  out.lambda = l[0];
  out.right = info.right_eigvecs().col(0);
  out.left = info.left_eigvecs().col(0);
  return out;
}

double eig_derivative(const Eigen::MatrixXd& d_matrix, const MinEigenpair& pair) {
  if (d_matrix.rows() != pair.left.size() || d_matrix.cols() != pair.right.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix derivative does not match eigenvectors");
  }
  return pair.left.dot(d_matrix * pair.right);
}

IdentifiabilityReport identifiability_check(const InfoMatrix& info, double threshold) {
  IdentifiabilityReport out;
  const double lmax = info.lambda_max();
  out.ratio = lmax > 0 ? info.lambda_min() / lmax : 0.0;
  out.identifiable = out.ratio >= threshold;
  if (!out.identifiable) out.null_direction = info.right_eigvecs().col(0);
  return out;
}

std::string info_matrix_csv(const InfoMatrix& info) {
  std::string out;
  const Eigen::MatrixXd& m = info.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += io::FormatDouble(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string info_matrix_summary_json(const InfoMatrix& info, double threshold) {
  nlohmann::ordered_json j;
  j["kind"] = info.kind() == InfoKind::kDiscrete ? "discrete" : "continuous";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < info.matrix().rows(); ++r) {
    std::vector<double> row(info.matrix().cols());
    for (Eigen::Index c = 0; c < info.matrix().cols(); ++c) row[c] = info.matrix()(r, c);
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["eigenvalues"] = std::vector<double>(info.eigenvalues().begin(), info.eigenvalues().end());
  const IdentifiabilityReport id = identifiability_check(info, threshold);
  j["lambda_ratio"] = id.ratio;
  j["identifiable"] = id.identifiable;
  if (!id.identifiable) {
    j["null_direction"] =
        std::vector<double>(id.null_direction.begin(), id.null_direction.end());
  }
  return j.dump(2);
}

}  // namespace fimax
