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

#include <gtest/gtest.h>

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/sensitivity.hpp"
#include "support/test_support.hpp"

namespace fimax {
namespace {

using testing::RelErr;

IntegratorConfig Tight() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-13;
  return cfg;
}

DenseTrajectory States(const PlantModel& model, const Eigen::VectorXd& x0,
                       const DenseTrajectory& u, const Eigen::VectorXd& theta, TimeSpan span) {
  auto field = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
    model.dynamics(x, u.eval(t), theta, dx);
  };
  return integrate(field, x0, span, Tight(), merged_breakpoints(u, span));
}

TEST(Sensitivity, LinearScalarClosedForm) {
  const LinearScalarModel model;
  const double th = -0.7, x0 = 1.3;
  const DenseTrajectory u = DenseTrajectory::Linear(
      {0.0, 3.0}, std::vector<Eigen::VectorXd>(2, Eigen::VectorXd::Zero(1)));
  const SensitivityBundle b = propagate(model, Eigen::VectorXd::Constant(1, x0), u,
                                        Eigen::VectorXd::Constant(1, th), {0.0, 3.0}, true, Tight());
  ASSERT_TRUE(b.has_omega());
  for (double t = 0.0; t <= 3.0; t += 0.25) {
    const double e = x0 * std::exp(th * t);
    EXPECT_NEAR(b.state.eval(t)[0], e, 1e-9);
    EXPECT_NEAR(b.psi_at(t)(0, 0), t * e, 1e-9);
    EXPECT_NEAR(b.omega_at(t)(0, 0, 0), t * t * e, 1e-9);
  }
}

TEST(Sensitivity, LinearScalarWithConstantInput) {
  // x' = th x + 1, x(0) = 0: x = (e^{th t} - 1) / th.
  const LinearScalarModel model;
  const double th = 0.4;
  const DenseTrajectory u = DenseTrajectory::Linear(
      {0.0, 2.0}, std::vector<Eigen::VectorXd>(2, Eigen::VectorXd::Ones(1)));
  const SensitivityBundle b = propagate(model, Eigen::VectorXd::Zero(1), u,
                                        Eigen::VectorXd::Constant(1, th), {0.0, 2.0}, false, Tight());
  EXPECT_FALSE(b.has_omega());
  for (double t = 0.1; t <= 2.0; t += 0.3) {
    const double dx = (t * th * std::exp(th * t) - (std::exp(th * t) - 1.0)) / (th * th);
    EXPECT_NEAR(b.psi_at(t)(0, 0), dx, 1e-8 * std::abs(dx));
  }
}

class CartSensitivity : public ::testing::Test {
 protected:
  CartSensitivity() : setup_(0.2, 0.5) {}
  testing::CartSetup setup_;
};

TEST_F(CartSensitivity, PsiMatchesStateDifferences) {
  const auto& prob = setup_.prob;
  const SensitivityBundle b =
      propagate(setup_.model, prob.x0, setup_.eta0.u, prob.theta, prob.span, false, Tight());
  for (int j = 0; j < 2; ++j) {
    const double h = 1e-4 * std::abs(prob.theta[j]);
    Eigen::VectorXd tp = prob.theta, tm = prob.theta;
    tp[j] += h;
    tm[j] -= h;
    const DenseTrajectory xp = States(setup_.model, prob.x0, setup_.eta0.u, tp, prob.span);
    const DenseTrajectory xm = States(setup_.model, prob.x0, setup_.eta0.u, tm, prob.span);
    Eigen::MatrixXd fd(6, 101), an(6, 101);
    for (int k = 0; k <= 100; ++k) {
      const double t = 0.05 * k;
      fd.col(k) = (xp.eval(t) - xm.eval(t)) / (2 * h);
      an.col(k) = b.psi_at(t).col(j);
    }
    EXPECT_LT(RelErr(an, fd), 1e-5) << "param " << j;
  }
}

TEST_F(CartSensitivity, OmegaMatchesPsiDifferences) {
  const auto& prob = setup_.prob;
  const SensitivityBundle b =
      propagate(setup_.model, prob.x0, setup_.eta0.u, prob.theta, prob.span, true, Tight());
  for (int k = 0; k < 2; ++k) {
    const double h = 1e-4 * std::abs(prob.theta[k]);
    Eigen::VectorXd tp = prob.theta, tm = prob.theta;
    tp[k] += h;
    tm[k] -= h;
    const SensitivityBundle bp =
        propagate(setup_.model, prob.x0, setup_.eta0.u, tp, prob.span, false, Tight());
    const SensitivityBundle bm =
        propagate(setup_.model, prob.x0, setup_.eta0.u, tm, prob.span, false, Tight());
    for (int j = 0; j < 2; ++j) {
      Eigen::MatrixXd fd(6, 51), an(6, 51);
      for (int s = 0; s <= 50; ++s) {
        const double t = 0.1 * s;
        fd.col(s) = (bp.psi_at(t).col(j) - bm.psi_at(t).col(j)) / (2 * h);
        const Tensor3 om = b.omega_at(t);
        for (int a = 0; a < 6; ++a) an(a, s) = om(a, j, k);
      }
      EXPECT_LT(RelErr(an, fd), 1e-4) << "j=" << j << " k=" << k;
    }
  }
}

TEST_F(CartSensitivity, OmegaIsSymmetricInParameters) {
  const auto& prob = setup_.prob;
  const SensitivityBundle b =
      propagate(setup_.model, prob.x0, setup_.eta0.u, prob.theta, prob.span, true);
  for (double t : {1.0, 2.5, 5.0}) {
    const Tensor3 om = b.omega_at(t);
    for (int a = 0; a < 6; ++a) EXPECT_NEAR(om(a, 0, 1), om(a, 1, 0), 1e-12 * (1 + om.max_abs()));
  }
}

TEST_F(CartSensitivity, SplitPropagationAgreesWithBundle) {
  const auto& prob = setup_.prob;
  const SensitivityBundle b =
      propagate(setup_.model, prob.x0, setup_.eta0.u, prob.theta, prob.span, true, Tight());
  const DenseTrajectory psi =
      propagate_first(setup_.model, b.state, setup_.eta0.u, prob.theta, Tight());
  const DenseTrajectory omega =
      propagate_second(setup_.model, b.state, setup_.eta0.u, prob.theta, psi, Tight());
  for (double t : {0.7, 2.0, 4.9}) {
    EXPECT_LT(RelErr(psi.eval(t), b.psi.eval(t)), 1e-6);
    EXPECT_LT(RelErr(omega.eval(t), b.omega.eval(t)), 1e-5);
  }
}

TEST(Sensitivity, UnpackLayout) {
  Eigen::VectorXd flat(6);
  flat << 1, 2, 3, 4, 5, 6;
  const Eigen::MatrixXd psi = UnpackPsi(flat, 3, 2);
  EXPECT_EQ(psi(0, 1), 2.0);
  EXPECT_EQ(psi(2, 0), 5.0);
}

TEST(Sensitivity, OutputSensitivityChainRule) {
  const CartDoublePendulum model;
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(6, 0.1, 0.6);
  Eigen::MatrixXd psi = Eigen::MatrixXd::Random(6, 2);
  const Eigen::MatrixXd g =
      output_sensitivity(model, x, Eigen::VectorXd::Zero(1), model.nominal_theta(), psi);
  ASSERT_EQ(g.rows(), 2);
  EXPECT_LT((g.row(0) - psi.row(1)).norm(), 1e-15);
  EXPECT_LT((g.row(1) - psi.row(1) - psi.row(2)).norm(), 1e-15);
}

}  // namespace
}  // namespace fimax
