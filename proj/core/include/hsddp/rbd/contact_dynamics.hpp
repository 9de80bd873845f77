/*
 * Copyright 2026 The HS-DDP Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "hsddp/common/types.hpp"
#include "hsddp/rbd/robot_model.hpp"

namespace hsddp::rbd {

struct State {
  Coordinates q = Coordinates::Zero();
  Coordinates v = Coordinates::Zero();

  StateVector stacked() const;
  static State from_stacked(const Eigen::Ref<const Vector> &x);
};

/// Active contact points; empty means flight.
class ContactSet {
 public:
  ContactSet() = default;
  ContactSet(std::initializer_list<Foot> feet);
  explicit ContactSet(std::vector<Foot> feet);

  static ContactSet flight() { return {}; }

  const std::vector<Foot> &feet() const { return feet_; }
  bool empty() const { return feet_.empty(); }
  int size() const { return static_cast<int>(feet_.size()); }
  bool contains(Foot foot) const;

 private:
  std::vector<Foot> feet_;
};

struct ContactForce {
  double tangential = 0.0;  // lambda_x, N
  double normal = 0.0;      // lambda_z, N
};

struct ContactSolution {
  Coordinates qdd = Coordinates::Zero();
  std::vector<ContactForce> forces;  // same order as ContactSet::feet()

  /// [lambda_x, lambda_z] per contact, stacked.
  Vector stacked_forces() const;
};

/// Jacobians of the discrete step x' = x + h [v; qdd].
struct StepJacobians {
  Eigen::Matrix<double, kStateDim, kStateDim> fx;
  Eigen::Matrix<double, kStateDim, kNumJoints> fu;
};

/// Exact first derivatives of the continuous flow: accelerations and contact
/// forces with respect to the state and the joint torques.
struct FlowDerivatives {
  ContactSolution solution;
  Eigen::Matrix<double, kNumCoordinates, kStateDim> qdd_x;
  Eigen::Matrix<double, kNumCoordinates, kNumJoints> qdd_u;
  Matrix forces_x;  // 2 * contacts x 14
  Matrix forces_u;  // 2 * contacts x 4
};

struct ImpactResult {
  State post;
  Eigen::Vector2d impulse = Eigen::Vector2d::Zero();  // [x, z], N s
};

struct GapDerivatives {
  double value = 0.0;
  Coordinates gradient = Coordinates::Zero();
  Eigen::Matrix<double, kNumCoordinates, kNumCoordinates> hessian;
};

Eigen::Vector2d foot_position(const RobotModel &model, const Coordinates &q,
                              Foot foot);
Eigen::Vector2d hip_position(const RobotModel &model, const Coordinates &q,
                             Foot foot);
Eigen::Vector2d knee_position(const RobotModel &model, const Coordinates &q,
                              Foot foot);
Eigen::Matrix<double, 2, kNumCoordinates> foot_jacobian(
    const RobotModel &model, const Coordinates &q, Foot foot);

/// Height of the foot above the ground plane z = 0.
double gap(const RobotModel &model, const Coordinates &q, Foot foot);
/// Time derivative of gap() along v.
double gap_rate(const RobotModel &model, const State &x, Foot foot);
/// gap() with its exact gradient and Hessian in q.
GapDerivatives gap_derivatives(const RobotModel &model, const Coordinates &q,
                               Foot foot);

Eigen::Matrix<double, kNumCoordinates, kNumCoordinates> mass_matrix(
    const RobotModel &model, const Coordinates &q);
/// C(q, v) v + tau_g.
Coordinates bias_forces(const RobotModel &model, const State &x);
double kinetic_energy(const RobotModel &model, const State &x);

/// Solves the contact KKT system for accelerations and contact forces.
ContactSolution contact_dynamics(const RobotModel &model, const State &x,
                                 const Torques &u, const ContactSet &contacts);

/// One forward-Euler step x' = x + h [v; qdd].
State integrate_step(const RobotModel &model, const State &x,
                     const Torques &u, const ContactSet &contacts, double h);

FlowDerivatives flow_derivatives(const RobotModel &model, const State &x,
                                 const Torques &u, const ContactSet &contacts);

StepJacobians linearize_step(const RobotModel &model, const State &x,
                             const Torques &u, const ContactSet &contacts,
                             double h);

/// Touchdown reset of a single foot; q is unchanged and the foot velocity is
/// reset per the model restitution (zero for e = 0).
ImpactResult impact_map(const RobotModel &model, const State &x_minus,
                        Foot foot);

/// Jacobian of the impact_map() state output with respect to x-.
Eigen::Matrix<double, kStateDim, kStateDim> reset_jacobian(
    const RobotModel &model, const State &x_minus, Foot foot);

}  // namespace hsddp::rbd
