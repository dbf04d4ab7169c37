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

#include "fimax/cart_double_pendulum.hpp"
#include "fimax/error.hpp"
#include "model/cart_double_pendulum_generated.hpp"

namespace fimax {
namespace {

// Offsets into the generated z vector.
constexpr int kZPhi1 = 0, kZPhi2 = 1, kZRate1 = 2, kZRate2 = 3, kZInput = 4;
constexpr int kZMass1 = 5, kZMass2 = 6, kZDamping = 7;

// State index -> z index for the states the accelerations depend on.
constexpr int kStateToZ[6] = {-1, kZPhi1, kZPhi2, -1, kZRate1, kZRate2};
constexpr int kActiveStates[4] = {1, 2, 4, 5};

double PlateInertiaPerMass(double length, double width, double offset, double com) {
  const double centre = 0.5 * length - offset;
  return (length * length + width * width) / 12.0 + (com - centre) * (com - centre);
}

}  // namespace

double CartDoublePendulumParams::inertia_per_mass1() const {
  return PlateInertiaPerMass(length1, width1, bearing_offset, com1);
}

double CartDoublePendulumParams::inertia_per_mass2() const {
  return PlateInertiaPerMass(length2, width2, bearing_offset, com2);
}

void CartDoublePendulumParams::validate() const {
  if (!(m1 > 0 && m2 > 0 && length1 > 0 && length2 > 0 && width1 > 0 && width2 > 0 &&
        com1 > 0 && com2 > 0 && gravity > 0 && bearing_offset >= 0 && damping >= 0 &&
        joint_separation() > 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cart pendulum masses, lengths and inertias must be positive");
  }
}

CartDoublePendulum::CartDoublePendulum(CartDoublePendulumParams params, CartParameterSet set)
    : params_(params), set_(set) {
  params_.validate();
}

std::vector<std::string> CartDoublePendulum::state_names() const {
  return {"x", "phi1", "phi2", "xdot", "phi1dot", "phi2dot"};
}

std::vector<std::string> CartDoublePendulum::input_names() const { return {"u"}; }

std::vector<std::string> CartDoublePendulum::param_names() const {
  if (set_ == CartParameterSet::kMassDamping) return {"m1", "c"};
  return {"m1", "m2"};
}

Eigen::VectorXd CartDoublePendulum::nominal_theta() const {
  if (set_ == CartParameterSet::kMassDamping) return Eigen::Vector2d(params_.m1, params_.damping);
  return Eigen::Vector2d(params_.m1, params_.m2);
}

void CartDoublePendulum::physical(const Eigen::VectorXd& theta, double& m1, double& m2,
                                  double& c) const {
  m1 = theta[0];
  if (set_ == CartParameterSet::kMassDamping) {
    m2 = params_.m2;
    c = theta[1];
  } else {
    m2 = theta[1];
    c = params_.damping;
  }
}

namespace {

struct Packed {
  detail::CartPendulumConstants k;
  double z[8];
  int theta_z[2];
};

Packed Pack(const CartDoublePendulumParams& p, CartParameterSet set, const Eigen::VectorXd& x,
            const Eigen::VectorXd& u, double m1, double m2, double c) {
  Packed out;
  out.k = {p.inertia_per_mass1(), p.inertia_per_mass2(), p.com1, p.com2,
           p.joint_separation(), p.gravity};
  out.z[kZPhi1] = x[1];
  out.z[kZPhi2] = x[2];
  out.z[kZRate1] = x[4];
  out.z[kZRate2] = x[5];
  out.z[kZInput] = u[0];
  out.z[kZMass1] = m1;
  out.z[kZMass2] = m2;
  out.z[kZDamping] = c;
  out.theta_z[0] = kZMass1;
  out.theta_z[1] = set == CartParameterSet::kMassDamping ? kZDamping : kZMass2;
  return out;
}

}  // namespace

void CartDoublePendulum::dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& theta, Eigen::VectorXd& xdot) const {
  double m1, m2, c;
  physical(theta, m1, m2, c);
  const Packed pk = Pack(params_, set_, x, u, m1, m2, c);
  double acc[2];
  detail::CartPendulumAccelerations(pk.k, pk.z, acc);
  xdot.resize(6);
  xdot << x[3], x[4], x[5], u[0], acc[0], acc[1];
}

void CartDoublePendulum::output(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                                const Eigen::VectorXd&, Eigen::VectorXd& y) const {
  y.resize(2);
  y << x[1], x[1] + x[2];
}

void CartDoublePendulum::dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& theta,
                                              DerivativeOrder order,
                                              DynamicsDerivatives& out) const {
  double m1, m2, c;
  physical(theta, m1, m2, c);
  const Packed pk = Pack(params_, set_, x, u, m1, m2, c);
  double acc[2];
  double jac[2][8];
  double hess[2][8][8];
  if (order == DerivativeOrder::kSecond) {
    detail::CartPendulumAccelerations(pk.k, pk.z, acc, jac, hess);
  } else {
    detail::CartPendulumAccelerations(pk.k, pk.z, acc, jac);
  }

  out.resize(6, 1, 2, order);
  // Kinematic rows.
  out.fx(0, 3) = 1.0;
  out.fx(1, 4) = 1.0;
  out.fx(2, 5) = 1.0;
  out.fu(3, 0) = 1.0;

  for (int r = 0; r < 2; ++r) {
    const int i = 4 + r;
    for (int a : kActiveStates) out.fx(i, a) = jac[r][kStateToZ[a]];
    out.fu(i, 0) = jac[r][kZInput];
    for (int j = 0; j < 2; ++j) out.ftheta(i, j) = jac[r][pk.theta_z[j]];
    if (order != DerivativeOrder::kSecond) continue;

    for (int a : kActiveStates) {
      const int za = kStateToZ[a];
      for (int b : kActiveStates) out.fxx(i, a, b) = hess[r][za][kStateToZ[b]];
      for (int k = 0; k < 2; ++k) out.fxtheta(i, a, k) = hess[r][za][pk.theta_z[k]];
      out.fxu(i, a, 0) = hess[r][za][kZInput];
    }
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) out.fthetatheta(i, j, k) = hess[r][pk.theta_z[j]][pk.theta_z[k]];
      out.fthetau(i, j, 0) = hess[r][pk.theta_z[j]][kZInput];
    }
  }
}

void CartDoublePendulum::output_derivatives(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                            const Eigen::VectorXd&, OutputDerivatives& out) const {
  out.resize(2, 6, 2);
  out.gx(0, 1) = 1.0;
  out.gx(1, 1) = 1.0;
  out.gx(1, 2) = 1.0;
}

ModelPoint CartDoublePendulum::sample_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> rate(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::uniform_real_distribution<double> accel(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  ModelPoint pt;
  pt.x.resize(6);
  pt.x << pos(rng), angle(rng), angle(rng), rate(rng), rate(rng), rate(rng);
  pt.u = Eigen::VectorXd::Constant(1, accel(rng));
  pt.theta = nominal_theta();
  pt.theta[0] *= scale(rng);
  pt.theta[1] *= scale(rng);
  if (set_ == CartParameterSet::kMassDamping && pt.theta[1] == 0.0) pt.theta[1] = 0.5;
  return pt;
}

double CartDoublePendulum::energy(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const {
  double m1, m2, c;
  physical(theta, m1, m2, c);
  const double s1 = params_.com1, s2 = params_.com2, d = params_.joint_separation();
  const double k1 = params_.inertia_per_mass1(), k2 = params_.inertia_per_mass2();
  const double a = x[1], b = x[1] + x[2];
  const double xd = x[3], ad = x[4], bd = x[4] + x[5];
  const double v1x = xd + s1 * std::cos(a) * ad, v1y = s1 * std::sin(a) * ad;
  const double v2x = xd + d * std::cos(a) * ad + s2 * std::cos(b) * bd;
  const double v2y = d * std::sin(a) * ad + s2 * std::sin(b) * bd;
  const double kinetic = 0.5 * m1 * (v1x * v1x + v1y * v1y) + 0.5 * m1 * k1 * ad * ad +
                         0.5 * m2 * (v2x * v2x + v2y * v2y) + 0.5 * m2 * k2 * bd * bd;
  const double potential = -m1 * params_.gravity * s1 * std::cos(a) -
                           m2 * params_.gravity * (d * std::cos(a) + s2 * std::cos(b));
  return kinetic + potential;
}

}  // namespace fimax
