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
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "fimax/error.hpp"
#include "fimax/estimation.hpp"
#include "fimax/information.hpp"
#include "fimax/sensitivity.hpp"
#include "support/test_support.hpp"

namespace fimax {
namespace {

using testing::RelErr;

// Sum over samples of Gamma^T Sigma^-1 Gamma with Gamma written out for the
// cart outputs (phi1, phi1 + phi2), which do not depend on theta.
Eigen::MatrixXd BruteForceCartFim(const SensitivityBundle& b, const std::vector<double>& times,
                                  const Eigen::MatrixXd& sigma) {
  const Eigen::MatrixXd w = sigma.inverse();
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(2, 2);
  for (double t : times) {
    const Eigen::MatrixXd psi = b.psi_at(t);
    Eigen::MatrixXd g(2, 2);
    for (int j = 0; j < 2; ++j) {
      g(0, j) = psi(1, j);
      g(1, j) = psi(1, j) + psi(2, j);
    }
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) {
        double s = 0.0;
        for (int r = 0; r < 2; ++r) {
          for (int q = 0; q < 2; ++q) s += g(r, a) * w(r, q) * g(q, c);
        }
        total(a, c) += s;
      }
    }
  }
  return total;
}

class CartInformation : public ::testing::Test {
 protected:
  CartInformation()
      : setup_(0.2, 0.5),
        bundle_(propagate(setup_.model, setup_.prob.x0, setup_.eta0.u, setup_.prob.theta,
                          setup_.prob.span, false)) {}
  testing::CartSetup setup_;
  SensitivityBundle bundle_;
};

TEST_F(CartInformation, DiscreteEqualsBruteForce) {
  const auto times = sample_times(setup_.prob.span, 30.0);
  ASSERT_EQ(times.size(), 150u);
  const InfoMatrix fim = fim_discrete(setup_.model, bundle_.state, setup_.eta0.u,
                                      setup_.prob.theta, bundle_.psi, times, setup_.prob.sigma);
  const Eigen::MatrixXd oracle = BruteForceCartFim(bundle_, times, setup_.prob.sigma.sigma());
  EXPECT_LT(RelErr(fim.matrix(), oracle), 1e-13);
  EXPECT_EQ(fim.kind(), InfoKind::kDiscrete);
}

TEST_F(CartInformation, DiscreteMatchesOutputDifferences) {
  // Gamma from finite differences of simulated outputs, no sensitivities used.
  EstimationProblem est{&setup_.model, setup_.eta0.u, setup_.prob.x0, {}};
  est.integrator.rel_tol = 1e-11;
  est.integrator.abs_tol = 1e-13;
  const auto times = sample_times(setup_.prob.span, 30.0);
  std::vector<Eigen::MatrixXd> gam(times.size(), Eigen::MatrixXd(2, 2));
  for (int j = 0; j < 2; ++j) {
    const double h = 1e-4 * setup_.prob.theta[j];
    Eigen::VectorXd tp = setup_.prob.theta, tm = setup_.prob.theta;
    tp[j] += h;
    tm[j] -= h;
    const auto yp = simulate_outputs(est, tp, times);
    const auto ym = simulate_outputs(est, tm, times);
    for (size_t i = 0; i < times.size(); ++i) gam[i].col(j) = (yp[i] - ym[i]) / (2 * h);
  }
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(2, 2);
  for (const auto& g : gam) oracle += g.transpose() * setup_.prob.sigma.inverse() * g;
  const InfoMatrix fim = fim_discrete(setup_.model, bundle_.state, setup_.eta0.u,
                                      setup_.prob.theta, bundle_.psi, times, setup_.prob.sigma);
  EXPECT_LT(RelErr(fim.matrix(), oracle), 1e-4);
}

TEST_F(CartInformation, ScaledDiscreteConvergesToContinuous) {
  const InfoMatrix cont = fim_continuous(setup_.model, bundle_.state, setup_.eta0.u,
                                         setup_.prob.theta, bundle_.psi, setup_.prob.sigma);
  EXPECT_EQ(cont.kind(), InfoKind::kContinuous);
  double prev = INFINITY;
  for (double rate : {30.0, 60.0, 120.0, 240.0}) {
    const InfoMatrix d =
        fim_discrete(setup_.model, bundle_.state, setup_.eta0.u, setup_.prob.theta, bundle_.psi,
                     sample_times(setup_.prob.span, rate), setup_.prob.sigma);
    const double gap = RelErr(d.matrix() / rate, cont.matrix());
    EXPECT_LT(gap, prev) << rate;
    prev = gap;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(InfoMatrix, EigenDecompositionIsAscending) {
  Eigen::Matrix3d m;
  m << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 1;
  const InfoMatrix info(m, InfoKind::kDiscrete);
  EXPECT_LE(info.eigenvalues()[0], info.eigenvalues()[1]);
  EXPECT_LE(info.eigenvalues()[1], info.eigenvalues()[2]);
  const Eigen::MatrixXd& v = info.right_eigvecs();
  EXPECT_LT((m * v - v * info.eigenvalues().asDiagonal()).norm(), 1e-12);
  EXPECT_NEAR(info.trace(), 8.0, 1e-14);
}

TEST(CramerRao, InverseOfInformation) {
  Eigen::Matrix2d m;
  m << 5.0, 2.0, 2.0, 3.0;
  const Eigen::MatrixXd crb = cramer_rao(InfoMatrix(m, InfoKind::kDiscrete));
  EXPECT_LT((crb * m - Eigen::Matrix2d::Identity()).norm(), 1e-14);
  EXPECT_EQ(crb, crb.transpose());
}

TEST(CramerRao, SingularThrowsWithDirection) {
  Eigen::Matrix2d m;
  m << 1.0, 1.0, 1.0, 1.0;
  try {
    cramer_rao(InfoMatrix(m, InfoKind::kDiscrete));
    FAIL();
  } catch (const SingularInformationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularInformation);
    const Eigen::VectorXd& d = e.null_direction();
    EXPECT_NEAR(std::abs(d[0]), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(d[0], -d[1], 1e-12);
  }
}

TEST(Identifiability, RatioAndNullDirection) {
  Eigen::Matrix2d m;
  m << 1.0, 0.0, 0.0, 1e-9;
  const IdentifiabilityReport bad = identifiability_check(InfoMatrix(m, InfoKind::kDiscrete));
  EXPECT_FALSE(bad.identifiable);
  EXPECT_NEAR(bad.ratio, 1e-9, 1e-20);
  EXPECT_NEAR(std::abs(bad.null_direction[1]), 1.0, 1e-12);
  m(1, 1) = 1e-3;
  EXPECT_TRUE(identifiability_check(InfoMatrix(m, InfoKind::kDiscrete)).identifiable);
}

TEST(Nelson, MatchesFiniteDifferencesOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  int checked = 0;
  while (checked < 50) {
    const int p = 2 + checked % 4;
    Eigen::MatrixXd a(p, p), da(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        a(i, j) = n01(rng);
        da(i, j) = n01(rng);
      }
    }
    a = 0.5 * (a + a.transpose()).eval();
    da = 0.5 * (da + da.transpose()).eval();
    const InfoMatrix info(a, InfoKind::kDiscrete);
    if (info.eigenvalues()[1] - info.eigenvalues()[0] < 1e-2) continue;
    const double h = 1e-6;
    const double fd = (InfoMatrix(a + h * da, InfoKind::kDiscrete).lambda_min() -
                       InfoMatrix(a - h * da, InfoKind::kDiscrete).lambda_min()) /
                      (2 * h);
    const double an = eig_derivative(da, min_eigenpair(info));
    EXPECT_LE(std::abs(an - fd), 1e-5 * std::max(std::abs(fd), 1e-8)) << checked;
    ++checked;
  }
}

TEST(Nelson, RepeatedEigenvalueIsRejected) {
  try {
    min_eigenpair(InfoMatrix(Eigen::Matrix2d::Identity(), InfoKind::kDiscrete));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateEigenvalue);
  }
}

TEST(InfoMatrix, SummaryJsonFlagsUnidentifiable) {
  Eigen::Matrix2d m;
  m << 1.0, 1.0, 1.0, 1.0;
  const std::string js = info_matrix_summary_json(InfoMatrix(m, InfoKind::kContinuous));
  EXPECT_NE(js.find("\"identifiable\": false"), std::string::npos) << js;
  EXPECT_NE(js.find("null_direction"), std::string::npos);
}

}  // namespace
}  // namespace fimax
