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
#ifndef FIMAX_INFORMATION_HPP_
#define FIMAX_INFORMATION_HPP_

#include <span>
#include <string>

#include "fimax/model.hpp"
#include "fimax/numkit.hpp"

namespace fimax {

enum class InfoKind { kDiscrete, kContinuous };

// Symmetric PSD information matrix with a cached eigen-decomposition.
class InfoMatrix {
 public:
  InfoMatrix() = default;
  InfoMatrix(const Eigen::MatrixXd& matrix, InfoKind kind);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  InfoKind kind() const { return kind_; }
  // Ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
  // Unit columns matching eigenvalues(); left and right coincide.
  const Eigen::MatrixXd& right_eigvecs() const { return eigvecs_; }
  const Eigen::MatrixXd& left_eigvecs() const { return eigvecs_; }
  double lambda_min() const { return eigvals_[0]; }
  double lambda_max() const { return eigvals_[eigvals_.size() - 1]; }
  double trace() const { return matrix_.trace(); }
  // Below this lambda_min the matrix is treated as singular.
  double singularity_threshold() const;

  InfoMatrix scaled(double alpha) const { return InfoMatrix(alpha * matrix_, kind_); }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd eigvals_;
  Eigen::MatrixXd eigvecs_;
  InfoKind kind_ = InfoKind::kDiscrete;
};

InfoMatrix fim_discrete(const PlantModel& model, const DenseTrajectory& x_traj,
                        const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                        const DenseTrajectory& psi, std::span<const double> times,
                        const MeasurementNoise& sigma);

InfoMatrix fim_continuous(const PlantModel& model, const DenseTrajectory& x_traj,
                          const DenseTrajectory& u_traj, const Eigen::VectorXd& theta,
                          const DenseTrajectory& psi, const MeasurementNoise& sigma,
                          const IntegratorConfig& cfg = {},
                          std::span<const double> breakpoints = {});

// Throws SingularInformationError carrying the weakest direction.
Eigen::MatrixXd cramer_rao(const InfoMatrix& info);

struct MinEigenpair {
  double lambda = 0.0;
  Eigen::VectorXd left;
  Eigen::VectorXd right;
};

// Sign convention: the first component with magnitude above 1e-12 is
// positive. Throws kDegenerateEigenvalue when the two smallest eigenvalues are
// closer than 1e-9 * max(|lambda_max|, 1).
MinEigenpair min_eigenpair(const InfoMatrix& info);

double eig_derivative(const Eigen::MatrixXd& d_matrix, const MinEigenpair& pair);

struct IdentifiabilityReport {
  bool identifiable = true;
  double ratio = 0.0;  // lambda_min / lambda_max
  Eigen::VectorXd null_direction;
};

IdentifiabilityReport identifiability_check(const InfoMatrix& info, double threshold = 1e-6);

// Row-major CSV without header.
std::string info_matrix_csv(const InfoMatrix& info);
// JSON summary: kind, matrix, eigenvalues, identifiability.
std::string info_matrix_summary_json(const InfoMatrix& info, double threshold = 1e-6);

}  // namespace fimax

#endif  // FIMAX_INFORMATION_HPP_
