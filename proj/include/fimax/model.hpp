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

#ifndef FIMAX_MODEL_HPP_
#define FIMAX_MODEL_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fimax/tensor.hpp"

namespace fimax {

enum class DerivativeOrder { kFirst, kSecond };

// Partial derivatives of the dynamics x' = f(x, u, theta).
//
// Second-order members are indexed (output, first, second):
//   fxx(i, a, b)         = d2 f_i / dx_a dx_b
//   fxtheta(i, a, k)     = d2 f_i / dx_a dtheta_k   (also serves D_theta D_x f)
//   fthetatheta(i, j, k) = d2 f_i / dtheta_j dtheta_k
//   fxu(i, a, c)         = d2 f_i / dx_a du_c
//   fthetau(i, j, c)     = d2 f_i / dtheta_j du_c
struct DynamicsDerivatives {
  Eigen::MatrixXd fx;
  Eigen::MatrixXd fu;
  Eigen::MatrixXd ftheta;
  Tensor3 fxx;
  Tensor3 fxtheta;
  Tensor3 fthetatheta;
  Tensor3 fxu;
  Tensor3 fthetau;

  void resize(int n, int m, int p, DerivativeOrder order);
};

// Partial derivatives of the output y = g(x, u, theta), same index layout.
struct OutputDerivatives {
  Eigen::MatrixXd gx;
  Eigen::MatrixXd gtheta;
  Tensor3 gxx;
  Tensor3 gxtheta;
  Tensor3 gthetatheta;

  void resize(int h, int n, int p);
};

struct ModelPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd u;
  Eigen::VectorXd theta;
};

// A plant with analytic derivatives to the orders the sensitivity, estimation
// and trajectory-optimization code consume. Implementations are immutable and
// safe to call from several threads.
//
// The virtual evaluators skip argument checks; use the free functions
// eval_dynamics / eval_output at API boundaries.
class PlantModel {
 public:
  virtual ~PlantModel() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int input_dim() const = 0;
  virtual int output_dim() const = 0;
  virtual int param_dim() const = 0;

  virtual std::vector<std::string> state_names() const;
  virtual std::vector<std::string> input_names() const;
  virtual std::vector<std::string> param_names() const;

  virtual void dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& theta, Eigen::VectorXd& xdot) const = 0;
  virtual void output(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& theta, Eigen::VectorXd& y) const = 0;
  virtual void dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& theta, DerivativeOrder order,
                                    DynamicsDerivatives& out) const = 0;
  virtual void output_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& theta,
                                  OutputDerivatives& out) const = 0;

  // Random point inside the model's declared domain, used by validation.
  virtual ModelPoint sample_point(std::mt19937_64& rng) const;
};

Eigen::VectorXd eval_dynamics(const PlantModel& model, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, const Eigen::VectorXd& theta);
Eigen::VectorXd eval_output(const PlantModel& model, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& u, const Eigen::VectorXd& theta);

// Output noise covariance. Symmetric positive definite; a zero matrix is
// accepted only for noise-free measurement synthesis (see is_zero()).
class MeasurementNoise {
 public:
  MeasurementNoise() = default;
  explicit MeasurementNoise(Eigen::MatrixXd sigma);

  static MeasurementNoise Diagonal(const Eigen::VectorXd& variances);
  // Builtin cart-pendulum angle noise, rad^2.
  static MeasurementNoise CartDefault();

  int dim() const { return static_cast<int>(sigma_.rows()); }
  const Eigen::MatrixXd& sigma() const { return sigma_; }
  bool is_zero() const { return zero_; }
  // Throws kSingularCovariance for a zero covariance.
  const Eigen::MatrixXd& inverse() const;
  // Lower Cholesky factor; zero for a zero covariance.
  const Eigen::MatrixXd& cholesky() const { return chol_; }

  MeasurementNoise scaled(double alpha) const;

 private:
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd inverse_;
  Eigen::MatrixXd chol_;
  bool zero_ = false;
};

struct DerivativeCheck {
  std::string name;
  double max_rel_error = 0.0;
  ModelPoint worst_point;
};

struct ValidationReport {
  std::vector<DerivativeCheck> checks;
  double tolerance = 1e-4;
  bool passed = true;
};

// Compares every analytic derivative of `model` against central differences of
// the next-lower-order member at `samples` random points. Throws
// kValidationFailed naming the first failing derivative unless `no_throw`.
ValidationReport validate_derivatives(const PlantModel& model, int samples, uint64_t seed,
                                      double tolerance = 1e-4, bool no_throw = false);

// x' = theta * x + u, y = x. All dimensions one.
class LinearScalarModel final : public PlantModel {
 public:
  std::string name() const override { return "linear_scalar"; }
  int state_dim() const override { return 1; }
  int input_dim() const override { return 1; }
  int output_dim() const override { return 1; }
  int param_dim() const override { return 1; }

  void dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                const Eigen::VectorXd& theta, Eigen::VectorXd& xdot) const override;
  void output(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
              const Eigen::VectorXd& theta, Eigen::VectorXd& y) const override;
  void dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& theta, DerivativeOrder order,
                            DynamicsDerivatives& out) const override;
  void output_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& theta, OutputDerivatives& out) const override;
};

}  // namespace fimax

#endif  // FIMAX_MODEL_HPP_
