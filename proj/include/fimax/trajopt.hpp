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
#ifndef FIMAX_TRAJOPT_HPP_
#define FIMAX_TRAJOPT_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fimax/information.hpp"
#include "fimax/model.hpp"
#include "fimax/numkit.hpp"

namespace fimax {

// Weights for the objective (Q_p, Q_tau, R_tau), the local descent model
// (Q_n, R_n) and the projection feedback design (Q_K, R_K). Extended-state
// matrices are N x N with N = n + n * p.
struct Weights {
  double Q_p = 10.0;
  Eigen::MatrixXd Q_tau;
  Eigen::MatrixXd R_tau;
  Eigen::MatrixXd Q_n;
  Eigen::MatrixXd R_n;
  Eigen::MatrixXd Q_K;
  Eigen::MatrixXd R_K;

  // Q_tau = 0, R_tau = 0.1 I, Q_n = I, R_n = I, Q_K = blkdiag(I_n, 0), R_K = I.
  static Weights Defaults(int n, int m, int p);
  // Shapes plus PSD/PD checks; throws kInvalidArgument.
  void validate(int n, int m, int p) const;
};

// Extended state xbar = (x, vec psi) with psi(a, j) at n + a * p + j, and a
// piecewise-linear control.
struct ExtendedTrajectory {
  DenseTrajectory xbar;
  DenseTrajectory u;
  bool feasible = false;

  Eigen::VectorXd state(double t, int n) const { return xbar.eval(t).head(n); }
};

struct TrajectoryProblem {
  const PlantModel* model = nullptr;
  Eigen::VectorXd theta;
  Eigen::VectorXd x0;
  TimeSpan span;
  double control_dt = 0.01;  // knot spacing of the control grid
  DenseTrajectory x_desired;  // state reference; empty means zero
  Weights weights;
  MeasurementNoise sigma;
  IntegratorConfig integrator;

  int n() const { return model->state_dim(); }
  int m() const { return model->input_dim(); }
  int p() const { return model->param_dim(); }
  int extended_dim() const { return n() + n() * p(); }
  std::vector<double> control_grid() const;
  void validate() const;
};

// Control samples on the problem grid, linearly interpolated.
DenseTrajectory control_on_grid(const TrajectoryProblem& prob,
                                const std::function<Eigen::VectorXd(double)>& fn);

// Open-loop simulation of the extended dynamics.
ExtendedTrajectory simulate_extended(const TrajectoryProblem& prob, const DenseTrajectory& u);

InfoMatrix trajectory_information(const TrajectoryProblem& prob, const ExtendedTrajectory& eta);

struct ObjectiveValue {
  double J = 0.0;
  double information_term = 0.0;  // Q_p / lambda_min
  double running_term = 0.0;
  InfoMatrix info;
};

// Throws SingularInformationError when Q_p > 0 and lambda_min is below the
// singularity threshold.
ObjectiveValue objective(const TrajectoryProblem& prob, const ExtendedTrajectory& eta);

using LinearizationFn =
    std::function<void(double t, Eigen::MatrixXd& A, Eigen::MatrixXd& B)>;
using CostGradientFn =
    std::function<void(double t, Eigen::RowVectorXd& a, Eigen::RowVectorXd& b)>;

// A = [[f_x, 0], [f_xx psi + f_xtheta, f_x (x) E]], B = [[f_u], [f_xu psi + f_thetau]].
void extended_linearization(const PlantModel& model, const Eigen::VectorXd& xbar,
                            const Eigen::VectorXd& u, const Eigen::VectorXd& theta,
                            Eigen::MatrixXd& A, Eigen::MatrixXd& B);
LinearizationFn dynamics_linearization(const TrajectoryProblem& prob,
                                       const ExtendedTrajectory& eta);

// a(t), b(t) of the running-cost form of DJ with the eigenvalue sensitivity.
CostGradientFn cost_linearization(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                  const MinEigenpair& pair);

// Row-major m x N gain samples, linear between knots.
struct FeedbackGain {
  DenseTrajectory K;
  int m = 0;
  int N = 0;

  Eigen::MatrixXd at(double t) const;
  static FeedbackGain Zero(int m, int N, TimeSpan span);
};

// Backward Riccati with P(tf) = 0; K = R_K^-1 B^T P. Throws kRiccatiBlowup.
FeedbackGain feedback_gain(const LinearizationFn& AB, const Eigen::MatrixXd& Q_K,
                           const Eigen::MatrixXd& R_K, TimeSpan span,
                           const IntegratorConfig& cfg = {},
                           std::span<const double> breakpoints = {});

struct DescentDirection {
  DenseTrajectory z;  // N
  DenseTrajectory v;  // m, linear between the knots of z
  double dJ_zeta = 0.0;
};

DescentDirection descent_direction(const CostGradientFn& ab, const LinearizationFn& AB,
                                   const Eigen::MatrixXd& Q_n, const Eigen::MatrixXd& R_n,
                                   TimeSpan span, const IntegratorConfig& cfg = {},
                                   std::span<const double> breakpoints = {});

// Tangent of the dynamics along a control variation dv: z' = A z + B dv,
// z(t0) = 0. dJ_zeta is filled from `ab` when provided.
DescentDirection project_variation(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                   const DenseTrajectory& dv,
                                   const CostGradientFn& ab = nullptr);

// xi = (alpha, mu): closed loop u = mu + K (alpha - xbar) recorded on the
// control grid, then an open-loop pass under that control.
using CurveFn = std::function<void(double t, Eigen::VectorXd& out)>;
ExtendedTrajectory project(const TrajectoryProblem& prob, const CurveFn& alpha,
                           const DenseTrajectory& mu, const FeedbackGain& K);
// project() with alpha = eta.xbar + gamma z and mu = eta.u + gamma v.
ExtendedTrajectory project_step(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                const DescentDirection& zeta, double gamma,
                                const FeedbackGain& K);

struct ArmijoOptions {
  double c1 = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 30;
};

struct ArmijoResult {
  double gamma = 0.0;
  ExtendedTrajectory eta;
  ObjectiveValue value;
  int backtracks = 0;
};

// Throws kLinesearchFailed.
ArmijoResult armijo_step(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                         const DescentDirection& zeta, double J_current,
                         const FeedbackGain& K, const ArmijoOptions& opts = {});

enum class MetricScaling {
  kFixed,        // Q_n, R_n as given
  kInformation,  // R_n + 6 Q_p / (T lambda_min ms(u)) I, see optimize()
};

struct OptimizerOptions {
  double tol = 0.1;
  MetricScaling metric = MetricScaling::kFixed;
  int max_iter = 100;
  ArmijoOptions armijo;
  bool record_wall_time = false;
};

struct IterationRecord {
  int iter = 0;
  double J = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double dJ_zeta = 0.0;
  double gamma = 0.0;  // accepted step from this iterate, 0 on the last row
  double wall_time_s = 0.0;
};

struct OptimizerResult {
  ExtendedTrajectory eta;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  bool converged = false;
  std::string status;  // "converged", "MaxIterExceeded" or "LinesearchFailed"
};

OptimizerResult optimize(const TrajectoryProblem& prob, const ExtendedTrajectory& eta0,
                         const OptimizerOptions& opts = {});

std::string trace_to_csv(const std::vector<IterationRecord>& trace);

// Adds amplitude * sin(2 pi f (t - t0)) to every input channel and re-simulates.
// Throws kStillSingular when the result is still not identifiable.
ExtendedTrajectory perturb_initial(const TrajectoryProblem& prob, const ExtendedTrajectory& eta,
                                   double amplitude, double frequency_hz,
                                   double threshold = 1e-6);

}  // namespace fimax

#endif  // FIMAX_TRAJOPT_HPP_
