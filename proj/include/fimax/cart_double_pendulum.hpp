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

#ifndef FIMAX_CART_DOUBLE_PENDULUM_HPP_
#define FIMAX_CART_DOUBLE_PENDULUM_HPP_

#include "fimax/model.hpp"

namespace fimax {

// Physical constants of the cart double pendulum. Lengths in m, masses in kg,
// damping in g/s (converted to SI inside the dynamics).
struct CartDoublePendulumParams {
  double m1 = 0.085;
  double m2 = 0.0847;
  double length1 = 0.305;
  double length2 = 0.305;
  double width1 = 0.0445;
  double width2 = 0.0381;
  double bearing_offset = 0.0127;
  double com1 = 0.146;
  double com2 = 0.125;
  double damping = 0.50;
  double gravity = 9.81;

  // Distance between the two bearings of link 1.
  double joint_separation() const { return length1 - 2.0 * bearing_offset; }
  // Inertia about the centre of mass per unit mass: a rectangular plate about
  // its geometric centre, shifted to the measured centre of mass.
  double inertia_per_mass1() const;
  double inertia_per_mass2() const;

  void validate() const;
};

// Which physical constants are treated as unknown parameters.
enum class CartParameterSet {
  kMassDamping,  // theta = (m1 [kg], c [g/s])
  kTwoMass,      // theta = (m1 [kg], m2 [kg]); c fixed at params.damping
};

// Cart with a two-link pendulum. The cart acceleration is the input.
//
// State (x, phi1, phi2, xdot, phi1dot, phi2dot): phi1 is link 1 from the
// hanging equilibrium, phi2 is link 2 relative to link 1. Outputs are the
// absolute link angles (phi1, phi1 + phi2).
class CartDoublePendulum final : public PlantModel {
 public:
  explicit CartDoublePendulum(CartDoublePendulumParams params = {},
                              CartParameterSet set = CartParameterSet::kMassDamping);

  std::string name() const override { return "cart_double_pendulum"; }
  int state_dim() const override { return 6; }
  int input_dim() const override { return 1; }
  int output_dim() const override { return 2; }
  int param_dim() const override { return 2; }

  std::vector<std::string> state_names() const override;
  std::vector<std::string> input_names() const override;
  std::vector<std::string> param_names() const override;

  void dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                const Eigen::VectorXd& theta, Eigen::VectorXd& xdot) const override;
  void output(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
              const Eigen::VectorXd& theta, Eigen::VectorXd& y) const override;
  void dynamics_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& theta, DerivativeOrder order,
                            DynamicsDerivatives& out) const override;
  void output_derivatives(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& theta, OutputDerivatives& out) const override;
  ModelPoint sample_point(std::mt19937_64& rng) const override;

  const CartDoublePendulumParams& params() const { return params_; }
  CartParameterSet parameter_set() const { return set_; }
  // Nominal theta taken from params().
  Eigen::VectorXd nominal_theta() const;

  // Kinetic plus potential energy of the pendulum links (the cart itself is
  // massless in this model since its motion is prescribed).
  double energy(const Eigen::VectorXd& x, const Eigen::VectorXd& theta) const;

 private:
  void physical(const Eigen::VectorXd& theta, double& m1, double& m2, double& c) const;

  CartDoublePendulumParams params_;
  CartParameterSet set_;
};

}  // namespace fimax

#endif  // FIMAX_CART_DOUBLE_PENDULUM_HPP_
