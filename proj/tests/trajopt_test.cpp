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
#include <random>

#include <gtest/gtest.h>

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/error.hpp"
#include "fimax/sensitivity.hpp"
#include "fimax/trajopt.hpp"
#include "support/test_support.hpp"

namespace fimax {
namespace {

using testing::RelErr;

TEST(ExtendedLinearization, LinearScalarClosedForm) {
  const LinearScalarModel model;
  Eigen::MatrixXd A, B;
  const double th = -0.3;
  extended_linearization(model, Eigen::Vector2d(0.7, 0.2), Eigen::VectorXd::Constant(1, 0.5),
                         Eigen::VectorXd::Constant(1, th), A, B);
  Eigen::Matrix2d A_exp;
  A_exp << th, 0.0, 1.0, th;
  EXPECT_EQ(A, Eigen::MatrixXd(A_exp));
  EXPECT_EQ(B, Eigen::MatrixXd(Eigen::Vector2d(1.0, 0.0)));
}

// Extended vector field built from the first-order model derivatives only.
Eigen::VectorXd ExtendedField(const PlantModel& model, const Eigen::VectorXd& xbar,
                              const Eigen::VectorXd& u, const Eigen::VectorXd& theta) {
  const int n = model.state_dim(), p = model.param_dim();
  const Eigen::VectorXd x = xbar.head(n);
  DynamicsDerivatives d;
  model.dynamics_derivatives(x, u, theta, DerivativeOrder::kFirst, d);
  Eigen::VectorXd out(n + n * p);
  out.head(n) = eval_dynamics(model, x, u, theta);
  const Eigen::MatrixXd psi = UnpackPsi(xbar.tail(n * p), n, p);
  const Eigen::MatrixXd dpsi = d.fx * psi + d.ftheta;
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < p; ++j) out[n + a * p + j] = dpsi(a, j);
  }
  return out;
}

TEST(ExtendedLinearization, CartMatchesDifferences) {
  const CartDoublePendulum model;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    const ModelPoint pt = model.sample_point(rng);
    Eigen::VectorXd xbar(18);
    xbar.head(6) = pt.x;
    for (int i = 6; i < 18; ++i) xbar[i] = ud(rng);
    Eigen::MatrixXd A, B;
    extended_linearization(model, xbar, pt.u, pt.theta, A, B);
    const Eigen::MatrixXd A_fd = fd_jacobian(
        [&](const Eigen::VectorXd& z) { return ExtendedField(model, z, pt.u, pt.theta); }, xbar,
        1e-6);
    const Eigen::MatrixXd B_fd = fd_jacobian(
        [&](const Eigen::VectorXd& v) { return ExtendedField(model, xbar, v, pt.theta); }, pt.u,
        1e-6);
    EXPECT_LT(RelErr(A, A_fd), 1e-6) << s;
    EXPECT_LT(RelErr(B, B_fd), 1e-6) << s;
  }
}

LinearizationFn ConstantAB(double a, double b) {
  return [a, b](double, Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
    A = Eigen::MatrixXd::Constant(1, 1, a);
    B = Eigen::MatrixXd::Constant(1, 1, b);
  };
}

TEST(FeedbackGain, ScalarRiccatiApproachesSteadyState) {
  // A = 0, B = Q = R = 1: P solves -P' = 1 - P^2 with P(T) = 0, so P = tanh(T - t).
  const FeedbackGain K =
      feedback_gain(ConstantAB(0.0, 1.0), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                    {0.0, 10.0});
  // Gains are stored at the integrator knots and linear in between.
  ASSERT_GT(K.K.size(), 20u);
  for (double t : K.K.times()) EXPECT_NEAR(K.at(t)(0, 0), std::tanh(10.0 - t), 1e-7) << t;
  EXPECT_NEAR(K.at(0.0)(0, 0), 1.0, 1e-7);
  EXPECT_NEAR(K.at(10.0)(0, 0), 0.0, 1e-12);
}

TEST(DescentDirection, ScalarQpWithLinearCostOnInput) {
  // A = 0, B = 1, a = 0, b = -1, Q = 0, R = 1: v = 1, z = t, DJ = -T.
  CostGradientFn ab = [](double, Eigen::RowVectorXd& a, Eigen::RowVectorXd& b) {
    a = Eigen::RowVectorXd::Zero(1);
    b = Eigen::RowVectorXd::Constant(1, -1.0);
  };
  const DescentDirection d = descent_direction(ab, ConstantAB(0.0, 1.0), Eigen::MatrixXd::Zero(1, 1),
                                               Eigen::MatrixXd::Ones(1, 1), {0.0, 2.0});
  for (double t : {0.0, 0.5, 1.3, 2.0}) {
    EXPECT_NEAR(d.v.eval(t)[0], 1.0, 1e-9);
    EXPECT_NEAR(d.z.eval(t)[0], t, 1e-9);
  }
  EXPECT_NEAR(d.dJ_zeta, -2.0, 1e-9);
}

TEST(DescentDirection, ScalarQpWithLinearCostOnState) {
  // a = alpha, b = 0: r = alpha (T - t), v = -r, z = -alpha (T t - t^2 / 2),
  // DJ = -alpha^2 T^3 / 3.
  const double alpha = 0.8, T = 1.5;
  CostGradientFn ab = [alpha](double, Eigen::RowVectorXd& a, Eigen::RowVectorXd& b) {
    a = Eigen::RowVectorXd::Constant(1, alpha);
    b = Eigen::RowVectorXd::Zero(1);
  };
  const DescentDirection d = descent_direction(ab, ConstantAB(0.0, 1.0), Eigen::MatrixXd::Zero(1, 1),
                                               Eigen::MatrixXd::Ones(1, 1), {0.0, T});
  for (double t : {0.0, 0.4, 1.1, T}) {
    EXPECT_NEAR(d.v.eval(t)[0], -alpha * (T - t), 1e-9);
    EXPECT_NEAR(d.z.eval(t)[0], -alpha * (T * t - 0.5 * t * t), 1e-9);
  }
  EXPECT_NEAR(d.dJ_zeta, -alpha * alpha * T * T * T / 3.0, 1e-9);
}

class CartTrajopt : public ::testing::Test {
 protected:
  CartTrajopt() : setup_(0.2, 0.5) {}
  testing::CartSetup setup_;
};

TEST_F(CartTrajopt, ProjectionOfFeasibleTrajectoryIsIdentity) {
  const auto& prob = setup_.prob;
  const FeedbackGain K =
      feedback_gain(dynamics_linearization(prob, setup_.eta0), prob.weights.Q_K, prob.weights.R_K,
                    prob.span, prob.integrator, prob.control_grid());
  DescentDirection zero;
  zero.z = DenseTrajectory::Linear({prob.span.t0, prob.span.tf},
                                   Eigen::MatrixXd::Zero(prob.extended_dim(), 2));
  zero.v = DenseTrajectory::Linear({prob.span.t0, prob.span.tf}, Eigen::MatrixXd::Zero(1, 2));
  const ExtendedTrajectory once = project_step(prob, setup_.eta0, zero, 1.0, K);
  const ExtendedTrajectory twice = project_step(prob, once, zero, 1.0, K);
  for (double t = 0.0; t <= 5.0; t += 0.25) {
    EXPECT_LT(RelErr(once.xbar.eval(t), setup_.eta0.xbar.eval(t)), 1e-6) << t;
    EXPECT_LT(RelErr(twice.xbar.eval(t), once.xbar.eval(t)), 1e-6) << t;
    EXPECT_NEAR(twice.u.eval(t)[0], once.u.eval(t)[0], 1e-8);
  }
}

TEST_F(CartTrajopt, ObjectiveWithoutInformationTerm) {
  auto& prob = setup_.prob;
  prob.weights.Q_p = 0.0;
  prob.weights.Q_tau = Eigen::MatrixXd::Identity(6, 6);
  const ObjectiveValue v = objective(prob, setup_.eta0);
  EXPECT_EQ(v.information_term, 0.0);
  // x tracks the reference exactly, so only 0.5 * 0.1 * int (0.2 sin(pi t))^2 remains.
  EXPECT_NEAR(v.J, 0.5 * 0.1 * 0.04 * 2.5, 1e-6);
}

TEST_F(CartTrajopt, ObjectiveMatchesInformationQuadrature) {
  const ObjectiveValue v = objective(setup_.prob, setup_.eta0);
  const InfoMatrix info = trajectory_information(setup_.prob, setup_.eta0);
  EXPECT_EQ(v.info.matrix(), info.matrix());
  EXPECT_NEAR(v.information_term, 10.0 / info.lambda_min(), 1e-12 * v.information_term);
  EXPECT_NEAR(v.J, v.information_term + v.running_term, 1e-12 * v.J);
}

TEST_F(CartTrajopt, GateauxDerivativeMatchesLinearization) {
  const auto& prob = setup_.prob;
  const ExtendedTrajectory& eta = setup_.eta0;
  const ObjectiveValue J0 = objective(prob, eta);
  const MinEigenpair pair = min_eigenpair(J0.info);
  const CostGradientFn ab = cost_linearization(prob, eta, pair);
  const FeedbackGain K = feedback_gain(dynamics_linearization(prob, eta), prob.weights.Q_K,
                                       prob.weights.R_K, prob.span, prob.integrator,
                                       prob.control_grid());
  const DenseTrajectory dv =
      testing::SineControl(prob, 0.05, 1.3, 0.4);
  const DescentDirection zeta = project_variation(prob, eta, dv, ab);
  const double eps = 1e-3;
  const double Jp = objective(prob, project_step(prob, eta, zeta, eps, K)).J;
  const double Jm = objective(prob, project_step(prob, eta, zeta, -eps, K)).J;
  const double fd = (Jp - Jm) / (2 * eps);
  EXPECT_NEAR(zeta.dJ_zeta, fd, 1e-3 * std::abs(fd));
}

TEST_F(CartTrajopt, ArmijoRejectsAscentDirection) {
  const auto& prob = setup_.prob;
  DescentDirection up;
  up.dJ_zeta = 1.0;
  up.z = DenseTrajectory::Linear({prob.span.t0, prob.span.tf},
                                 Eigen::MatrixXd::Zero(prob.extended_dim(), 2));
  up.v = DenseTrajectory::Linear({prob.span.t0, prob.span.tf}, Eigen::MatrixXd::Zero(1, 2));
  try {
    armijo_step(prob, setup_.eta0, up, 1.0, FeedbackGain::Zero(1, prob.extended_dim(), prob.span));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLinesearchFailed);
  }
}

TEST(PerturbInitial, RestingCartBecomesIdentifiable) {
  testing::CartSetup rest(0.0, 0.5);
  EXPECT_THROW(objective(rest.prob, rest.eta0), SingularInformationError);
  const ExtendedTrajectory same = perturb_initial(rest.prob, rest.eta0, 0.0, 0.7);
  EXPECT_EQ(same.u.values(), rest.eta0.u.values());
  const ExtendedTrajectory moved = perturb_initial(rest.prob, rest.eta0, 0.3, 0.7);
  const InfoMatrix info = trajectory_information(rest.prob, moved);
  EXPECT_TRUE(identifiability_check(info).identifiable);
  EXPECT_NEAR(moved.u.eval(1.0)[0], 0.3 * std::sin(2 * std::numbers::pi * 0.7), 1e-12);
}

TEST(PerturbInitial, UndampedTwoMassStaysSingular) {
  CartDoublePendulumParams k;
  k.damping = 0.0;
  testing::CartSetup two(0.0, 0.5, CartParameterSet::kTwoMass, k);
  try {
    perturb_initial(two.prob, two.eta0, 0.5, 0.8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStillSingular);
  }
}

TEST(Optimizer, LinearScalarImprovesInformation) {
  const LinearScalarModel model;
  TrajectoryProblem prob;
  prob.model = &model;
  prob.theta = Eigen::VectorXd::Constant(1, -0.5);
  prob.x0 = Eigen::VectorXd::Zero(1);
  prob.span = {0.0, 2.0};
  prob.control_dt = 0.05;
  prob.weights = Weights::Defaults(1, 1, 1);
  prob.sigma = MeasurementNoise(Eigen::MatrixXd::Constant(1, 1, 1e-2));
  const ExtendedTrajectory eta0 = simulate_extended(
      prob, control_on_grid(prob, [](double) { return Eigen::VectorXd::Constant(1, 0.1); }));
  OptimizerOptions opts;
  opts.tol = 1e-3;
  opts.max_iter = 50;
  const OptimizerResult r = optimize(prob, eta0, opts);
  ASSERT_GE(r.trace.size(), 2u);
  for (size_t k = 1; k < r.trace.size(); ++k) EXPECT_LT(r.trace[k].J, r.trace[k - 1].J);
  EXPECT_GT(r.trace.back().lambda_min, r.trace.front().lambda_min);
  EXPECT_TRUE(r.eta.feasible);
  const std::string csv = trace_to_csv(r.trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,J,lambda_min,lambda_max,dJ_zeta,gamma,wall_time_s");
}

TEST(Weights, ValidateShapes) {
  Weights w = Weights::Defaults(6, 1, 2);
  EXPECT_NO_THROW(w.validate(6, 1, 2));
  EXPECT_EQ(w.Q_K.rows(), 18);
  EXPECT_EQ(w.Q_K(7, 7), 0.0);
  EXPECT_EQ(w.Q_K(5, 5), 1.0);
  w.R_n(0, 0) = 0.0;
  EXPECT_THROW(w.validate(6, 1, 2), Error);
}

}  // namespace
}  // namespace fimax
