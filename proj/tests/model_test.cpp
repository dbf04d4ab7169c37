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

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/error.hpp"
#include "fimax/model.hpp"
#include "fimax/numkit.hpp"

namespace fimax {
namespace {

// Lagrangian in generalized coordinates q = (x, a, b) with a the first link
// angle and b the relative angle of the second link, written out by hand.
double Lagrangian(const CartDoublePendulumParams& k, double m1, double m2,
                  const Eigen::Vector3d& q, const Eigen::Vector3d& qd) {
  const double s1 = k.com1, s2 = k.com2, d = k.joint_separation();
  const double a = q[1], ab = q[1] + q[2];
  const double ad = qd[1], abd = qd[1] + qd[2];
  const Eigen::Vector2d v1(qd[0] + s1 * std::cos(a) * ad, s1 * std::sin(a) * ad);
  const Eigen::Vector2d v2(qd[0] + d * std::cos(a) * ad + s2 * std::cos(ab) * abd,
                           d * std::sin(a) * ad + s2 * std::sin(ab) * abd);
  const double T = 0.5 * m1 * v1.squaredNorm() + 0.5 * m1 * k.inertia_per_mass1() * ad * ad +
                   0.5 * m2 * v2.squaredNorm() + 0.5 * m2 * k.inertia_per_mass2() * abd * abd;
  const double V = -m1 * k.gravity * s1 * std::cos(a) -
                   m2 * k.gravity * (d * std::cos(a) + s2 * std::cos(ab));
  return T - V;
}

// Joint accelerations from the Euler-Lagrange equations, with every partial
// derivative of L taken by central differences.
Eigen::Vector2d OracleAccelerations(const CartDoublePendulumParams& k, double m1, double m2,
                                    double c_gs, const Eigen::VectorXd& x, double u) {
  const Eigen::Vector3d q = x.head(3), qd = x.tail(3);
  auto L = [&](const Eigen::Vector3d& qq, const Eigen::Vector3d& vv) {
    return Lagrangian(k, m1, m2, qq, vv);
  };
  // Mixed second differences lose digits to rounding below h ~ 1e-3.
  const double h = 1e-3;
  Eigen::Matrix3d M, C;
  Eigen::Vector3d G;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d ei = h * Eigen::Vector3d::Unit(i);
    G[i] = (L(q + ei, qd) - L(q - ei, qd)) / (2 * h);
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector3d ej = h * Eigen::Vector3d::Unit(j);
      M(i, j) = (L(q, qd + ei + ej) - L(q, qd + ei - ej) - L(q, qd - ei + ej) +
                 L(q, qd - ei - ej)) / (4 * h * h);
      C(i, j) = (L(q + ej, qd + ei) - L(q + ej, qd - ei) - L(q - ej, qd + ei) +
                 L(q - ej, qd - ei)) / (4 * h * h);
    }
  }
  // Rows a and b: M qdd + C qd - G = -c qd, with the cart acceleration known.
  const double c = c_gs / 1000.0;
  Eigen::Matrix2d A = M.block<2, 2>(1, 1);
  Eigen::Vector2d rhs;
  for (int r = 0; r < 2; ++r) {
    const int i = r + 1;
    rhs[r] = -c * qd[i] - C.row(i).dot(qd) + G[i] - M(i, 0) * u;
  }
  return A.lu().solve(rhs);
}

TEST(CartModel, MatchesIndependentEulerLagrange) {
  const CartDoublePendulumParams k;
  const CartDoublePendulum model(k);
  std::mt19937_64 rng(7);
  for (int s = 0; s < 50; ++s) {
    const ModelPoint pt = model.sample_point(rng);
    const Eigen::VectorXd xdot = eval_dynamics(model, pt.x, pt.u, pt.theta);
    const Eigen::Vector2d acc =
        OracleAccelerations(k, pt.theta[0], k.m2, pt.theta[1], pt.x, pt.u[0]);
    EXPECT_EQ(xdot.head(3), pt.x.tail(3));
    EXPECT_EQ(xdot[3], pt.u[0]);
    const double scale = std::max(acc.cwiseAbs().maxCoeff(), 1.0);
    EXPECT_LT((xdot.tail(2) - acc).cwiseAbs().maxCoeff() / scale, 1e-6) << "sample " << s;
  }
}

TEST(CartModel, TwoMassSetMatchesOracle) {
  const CartDoublePendulumParams k;
  const CartDoublePendulum model(k, CartParameterSet::kTwoMass);
  std::mt19937_64 rng(8);
  for (int s = 0; s < 20; ++s) {
    const ModelPoint pt = model.sample_point(rng);
    const Eigen::VectorXd xdot = eval_dynamics(model, pt.x, pt.u, pt.theta);
    const Eigen::Vector2d acc =
        OracleAccelerations(k, pt.theta[0], pt.theta[1], k.damping, pt.x, pt.u[0]);
    const double scale = std::max(acc.cwiseAbs().maxCoeff(), 1.0);
    EXPECT_LT((xdot.tail(2) - acc).cwiseAbs().maxCoeff() / scale, 1e-6);
  }
}

TEST(CartModel, HangingRestIsEquilibrium) {
  const CartDoublePendulum model;
  const Eigen::VectorXd xdot = eval_dynamics(model, Eigen::VectorXd::Zero(6),
                                             Eigen::VectorXd::Zero(1), model.nominal_theta());
  EXPECT_LT(xdot.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CartModel, UndampedFreeMotionConservesEnergy) {
  CartDoublePendulumParams k;
  k.damping = 0.0;
  const CartDoublePendulum model(k);
  const Eigen::VectorXd theta = model.nominal_theta();
  auto field = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
    model.dynamics(x, Eigen::VectorXd::Zero(1), theta, dx);
  };
  Eigen::VectorXd x0(6);
  x0 << 0.0, 0.8, -0.5, 0.0, 0.3, 1.0;
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-12;
  const DenseTrajectory tr = integrate(field, x0, {0.0, 10.0}, cfg);
  const double e0 = model.energy(x0, theta);
  double drift = 0.0;
  for (size_t i = 0; i < tr.size(); ++i) {
    drift = std::max(drift, std::abs(model.energy(tr.value(i), theta) - e0));
  }
  EXPECT_LT(drift / std::abs(e0), 1e-7);
}

TEST(CartModel, DampingDissipatesEnergy) {
  const CartDoublePendulum model;
  const Eigen::VectorXd theta = model.nominal_theta();
  auto field = [&](double, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
    model.dynamics(x, Eigen::VectorXd::Zero(1), theta, dx);
  };
  Eigen::VectorXd x0(6);
  x0 << 0.0, 0.5, 0.2, 0.0, 0.0, 0.0;
  const DenseTrajectory tr = integrate(field, x0, {0.0, 5.0}, {});
  double prev = model.energy(x0, theta);
  for (size_t i = 1; i < tr.size(); ++i) {
    const double e = model.energy(tr.value(i), theta);
    EXPECT_LE(e, prev + 1e-9);
    prev = e;
  }
  EXPECT_LT(prev, model.energy(x0, theta));
}

TEST(CartModel, OutputsAreAbsoluteAngles) {
  const CartDoublePendulum model;
  Eigen::VectorXd x(6);
  x << 1.0, 0.3, -0.1, 2.0, 0.0, 0.0;
  const Eigen::VectorXd y = eval_output(model, x, Eigen::VectorXd::Zero(1), model.nominal_theta());
  EXPECT_DOUBLE_EQ(y[0], 0.3);
  EXPECT_DOUBLE_EQ(y[1], 0.2);
}

TEST(ValidateDerivatives, CartMassDamping) {
  const CartDoublePendulum model;
  const ValidationReport rep = validate_derivatives(model, 100, 1);
  EXPECT_TRUE(rep.passed);
  for (const auto& c : rep.checks) EXPECT_LE(c.max_rel_error, 1e-4) << c.name;
}

TEST(ValidateDerivatives, CartTwoMass) {
  const CartDoublePendulum model({}, CartParameterSet::kTwoMass);
  EXPECT_TRUE(validate_derivatives(model, 100, 2).passed);
}

TEST(ValidateDerivatives, LinearScalar) {
  const LinearScalarModel model;
  EXPECT_TRUE(validate_derivatives(model, 100, 3).passed);
}

// Deliberately wrong derivative must be caught.
class BrokenModel final : public PlantModel {
 public:
  std::string name() const override { return "broken"; }
  int state_dim() const override { return 1; }
  int input_dim() const override { return 1; }
  int output_dim() const override { return 1; }
  int param_dim() const override { return 1; }
  void dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& th,
                Eigen::VectorXd& xdot) const override {
    inner_.dynamics(x, u, th, xdot);
  }
  void output(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& th,
              Eigen::VectorXd& y) const override {
    inner_.output(x, u, th, y);
  }
  void dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& th, DerivativeOrder order,
                            DynamicsDerivatives& out) const override {
    inner_.dynamics_derivatives(x, u, th, order, out);
    out.ftheta(0, 0) *= 1.01;
  }
  void output_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& th, OutputDerivatives& out) const override {
    inner_.output_derivatives(x, u, th, out);
  }

 private:
  LinearScalarModel inner_;
};

TEST(ValidateDerivatives, DetectsWrongJacobian) {
  const BrokenModel model;
  EXPECT_FALSE(validate_derivatives(model, 20, 4, 1e-4, true).passed);
  try {
    validate_derivatives(model, 20, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationFailed);
  }
}

TEST(MeasurementNoise, CholeskyAndInverse) {
  Eigen::Matrix2d s;
  s << 2.0, 0.5, 0.5, 1.0;
  const MeasurementNoise noise(s);
  EXPECT_LT((noise.cholesky() * noise.cholesky().transpose() - s).norm(), 1e-14);
  EXPECT_LT((noise.inverse() * s - Eigen::Matrix2d::Identity()).norm(), 1e-14);
  const MeasurementNoise zero(Eigen::Matrix2d::Zero());
  EXPECT_TRUE(zero.is_zero());
  EXPECT_THROW(zero.inverse(), Error);
  EXPECT_THROW(MeasurementNoise(Eigen::Matrix2d(Eigen::Vector2d(1.0, -1.0).asDiagonal())), Error);
}

TEST(EvalDynamics, RejectsWrongDimensions) {
  const CartDoublePendulum model;
  EXPECT_THROW(eval_dynamics(model, Eigen::VectorXd::Zero(5), Eigen::VectorXd::Zero(1),
                             model.nominal_theta()),
               Error);
}

}  // namespace
}  // namespace fimax
