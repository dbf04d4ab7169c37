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
#include "fimax/model.hpp"

namespace fimax {
namespace {

std::vector<std::string> Numbered(const std::string& prefix, int count) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

void CheckDims(const PlantModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
               const Eigen::VectorXd& theta) {
  if (x.size() != model.state_dim() || u.size() != model.input_dim() ||
      theta.size() != model.param_dim()) {
    std::ostringstream msg;
    msg << model.name() << " expects (n, m, p) = (" << model.state_dim() << ", "
        << model.input_dim() << ", " << model.param_dim() << "), got (" << x.size() << ", "
        << u.size() << ", " << theta.size() << ")";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

}  // namespace

void DynamicsDerivatives::resize(int n, int m, int p, DerivativeOrder order) {
  fx.setZero(n, n);
  fu.setZero(n, m);
  ftheta.setZero(n, p);
  if (order == DerivativeOrder::kSecond) {
    fxx.resize(n, n, n);
    fxtheta.resize(n, n, p);
    fthetatheta.resize(n, p, p);
    fxu.resize(n, n, m);
    fthetau.resize(n, p, m);
  }
}

void OutputDerivatives::resize(int h, int n, int p) {
  gx.setZero(h, n);
  gtheta.setZero(h, p);
  gxx.resize(h, n, n);
  gxtheta.resize(h, n, p);
  gthetatheta.resize(h, p, p);
}

std::vector<std::string> PlantModel::state_names() const { return Numbered("x", state_dim()); }
std::vector<std::string> PlantModel::input_names() const { return Numbered("u", input_dim()); }
std::vector<std::string> PlantModel::param_names() const {
  return Numbered("theta", param_dim());
}

ModelPoint PlantModel::sample_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.5, 1.5);
  ModelPoint pt{Eigen::VectorXd(state_dim()), Eigen::VectorXd(input_dim()),
                Eigen::VectorXd(param_dim())};
  for (auto& v : pt.x) v = sym(rng);
  for (auto& v : pt.u) v = sym(rng);
  for (auto& v : pt.theta) v = pos(rng);
  return pt;
}

Eigen::VectorXd eval_dynamics(const PlantModel& model, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, const Eigen::VectorXd& theta) {
  CheckDims(model, x, u, theta);
  Eigen::VectorXd xdot(model.state_dim());
  model.dynamics(x, u, theta, xdot);
  if (!xdot.allFinite()) {
    throw Error(ErrorCode::kNonFiniteResult, model.name() + " dynamics returned non-finite values");
  }
  return xdot;
}

Eigen::VectorXd eval_output(const PlantModel& model, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& u, const Eigen::VectorXd& theta) {
  CheckDims(model, x, u, theta);
  Eigen::VectorXd y(model.output_dim());
  model.output(x, u, theta, y);
  if (!y.allFinite()) {
    throw Error(ErrorCode::kNonFiniteResult, model.name() + " output returned non-finite values");
  }
  return y;
}

MeasurementNoise::MeasurementNoise(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  if (sigma_.rows() != sigma_.cols() || sigma_.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "noise covariance must be square and non-empty");
  }
  if (!sigma_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "noise covariance is not finite");
  }
  const double scale = std::max(sigma_.cwiseAbs().maxCoeff(), 1e-300);
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "noise covariance is not symmetric");
  }
  sigma_ = 0.5 * (sigma_ + sigma_.transpose()).eval();
  if (sigma_.isZero(0.0)) {
    zero_ = true;
    chol_ = Eigen::MatrixXd::Zero(sigma_.rows(), sigma_.cols());
    return;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance, "noise covariance is not positive definite");
  }
  chol_ = llt.matrixL();
  inverse_ = llt.solve(Eigen::MatrixXd::Identity(sigma_.rows(), sigma_.cols()));
  inverse_ = 0.5 * (inverse_ + inverse_.transpose()).eval();
}

MeasurementNoise MeasurementNoise::Diagonal(const Eigen::VectorXd& variances) {
  return MeasurementNoise(Eigen::MatrixXd(variances.asDiagonal()));
}

MeasurementNoise MeasurementNoise::CartDefault() {
  return Diagonal(Eigen::Vector2d(1.12e-4, 4.79e-4));
}

const Eigen::MatrixXd& MeasurementNoise::inverse() const {
  if (zero_) throw Error(ErrorCode::kSingularCovariance, "zero noise covariance has no inverse");
  if (sigma_.size() == 0) throw Error(ErrorCode::kSingularCovariance, "empty noise covariance");
  return inverse_;
}

MeasurementNoise MeasurementNoise::scaled(double alpha) const {
  return MeasurementNoise(alpha * sigma_);
}

}  // namespace fimax
