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

#include <gtest/gtest.h>

#include "fimax/error.hpp"
#include "fimax/numkit.hpp"

namespace fimax {
namespace {

IntegratorConfig Tight() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  return cfg;
}

TEST(Integrator, ExponentialDecay) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = -x; };
  const DenseTrajectory tr = integrate(field, Eigen::VectorXd::Ones(1), {0.0, 3.0}, Tight());
  for (double t : {0.3, 1.0, 2.5, 3.0}) {
    EXPECT_NEAR(tr.eval(t)[0], std::exp(-t), 1e-9 * std::exp(-t)) << "t=" << t;
  }
}

TEST(Integrator, GlobalErrorFollowsTolerance) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = -x; };
  double prev = INFINITY;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = 1e-3 * tol;
    const DenseTrajectory tr = integrate(field, Eigen::VectorXd::Ones(1), {0.0, 2.0}, cfg);
    const double err = std::abs(tr.eval(2.0)[0] - std::exp(-2.0)) / std::exp(-2.0);
    EXPECT_LT(err, 100.0 * tol);
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(Integrator, HarmonicOscillatorLongHorizon) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
    dx.resize(2);
    dx << x[1], -x[0];
  };
  const DenseTrajectory tr = integrate(field, Eigen::Vector2d(1.0, 0.0), {0.0, 20.0}, {});
  for (double t = 0.0; t <= 20.0; t += 0.37) {
    EXPECT_NEAR(tr.eval(t)[0], std::cos(t), 1e-6);
    EXPECT_NEAR(tr.eval(t)[1], -std::sin(t), 1e-6);
  }
}

TEST(Integrator, LandsOnBreakpointsExactly) {
  auto field = [](double t, const Eigen::VectorXd&, Eigen::VectorXd& dx) {
    dx = Eigen::VectorXd::Constant(1, std::abs(t - 0.5));
  };
  const std::vector<double> bps{0.5, 0.123456789};
  const DenseTrajectory tr = integrate(field, Eigen::VectorXd::Zero(1), {0.0, 1.0}, {}, bps);
  for (double b : bps) {
    const auto it = std::find(tr.times().begin(), tr.times().end(), b);
    ASSERT_NE(it, tr.times().end()) << b;
    EXPECT_EQ(tr.eval(b)[0], tr.value(static_cast<size_t>(it - tr.times().begin()))[0]);
  }
  // Integral of |t - 0.5| on [0, 1] is 1/4; the kink sits on a breakpoint.
  EXPECT_NEAR(tr.eval(1.0)[0], 0.25, 1e-12);
}

TEST(Integrator, BackwardIntegration) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = x; };
  const DenseTrajectory tr =
      integrate(field, Eigen::VectorXd::Constant(1, std::numbers::e), {1.0, 0.0}, Tight());
  EXPECT_LT(tr.times().front(), tr.times().back());
  EXPECT_NEAR(tr.eval(0.0)[0], 1.0, 1e-10);
  EXPECT_NEAR(tr.eval(0.5)[0], std::exp(0.5), 1e-10);
}

TEST(Integrator, StatsRecordSteps) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = -10.0 * x; };
  IntegrationStats stats;
  integrate(field, Eigen::VectorXd::Ones(1), {0.0, 1.0}, {}, {}, &stats);
  EXPECT_GT(stats.accepted, 0);
  EXPECT_EQ(stats.step_sizes.size(), static_cast<size_t>(stats.accepted));
  EXPECT_GT(stats.min_step(), 0.0);
  EXPECT_LE(stats.min_step(), stats.mean_step());
}

TEST(Integrator, BlowUpIsANumericalError) {
  auto field = [](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = x.cwiseAbs2(); };
  try {
    integrate(field, Eigen::VectorXd::Ones(1), {0.0, 2.0}, {});
    FAIL() << "expected a failure past the singularity at t = 1";
  } catch (const Error& e) {
    EXPECT_TRUE(IsNumericalError(e.code())) << e.what();
  }
}

TEST(IntegratorConfig, RejectsBadTolerances) {
  IntegratorConfig cfg;
  cfg.rel_tol = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.h_min = 1.0;
  cfg.h_max = 0.1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(DenseTrajectory, LinearKnotsAndMidpoints) {
  const DenseTrajectory tr = DenseTrajectory::Linear(
      {0.0, 1.0, 3.0}, std::vector<Eigen::VectorXd>{Eigen::Vector2d(0, 1), Eigen::Vector2d(2, 3),
                                                    Eigen::Vector2d(6, 3)});
  EXPECT_EQ(tr.eval(1.0), Eigen::Vector2d(2, 3));
  EXPECT_NEAR(tr.eval(0.5)[0], 1.0, 1e-15);
  EXPECT_NEAR(tr.eval(2.0)[0], 4.0, 1e-15);
  EXPECT_EQ(tr.block(1, 1).eval(2.0)[0], 3.0);
}

TEST(DenseTrajectory, HermiteReproducesCubics) {
  auto f = [](double t) { return 2.0 * t * t * t - t + 0.5; };
  auto df = [](double t) { return 6.0 * t * t - 1.0; };
  std::vector<double> ts{0.0, 0.7, 2.0};
  std::vector<Eigen::VectorXd> v, d;
  for (double t : ts) {
    v.push_back(Eigen::VectorXd::Constant(1, f(t)));
    d.push_back(Eigen::VectorXd::Constant(1, df(t)));
  }
  const DenseTrajectory tr = DenseTrajectory::Hermite(ts, v, d);
  for (double t = 0.0; t <= 2.0; t += 0.05) EXPECT_NEAR(tr.eval(t)[0], f(t), 1e-12);
}

TEST(DenseTrajectory, RejectsUnsortedKnots) {
  EXPECT_THROW(DenseTrajectory::Linear({0.0, 0.0}, std::vector<Eigen::VectorXd>(
                                                       2, Eigen::VectorXd::Zero(1))),
               Error);
}

TEST(FiniteDifference, JacobianOfKnownMap) {
  auto fn = [](const Eigen::VectorXd& x) {
    return Eigen::Vector2d(std::sin(x[0]) * x[1], x[0] * x[0] + std::exp(x[1]));
  };
  const Eigen::Vector2d x(0.3, -0.7);
  Eigen::Matrix2d exact;
  exact << std::cos(x[0]) * x[1], std::sin(x[0]), 2 * x[0], std::exp(x[1]);
  EXPECT_LT((fd_jacobian(fn, x, 1e-5) - exact).cwiseAbs().maxCoeff(), 1e-9);
}

}  // namespace
}  // namespace fimax
