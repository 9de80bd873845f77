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

#include <vector>

#include "hsddp/bounding/bounding_cost.hpp"
#include "hsddp/common/trajectory.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/rbd/contact_dynamics.hpp"

namespace hsddp::bounding {

struct WarmStartParams {
  double kp = 60.0;   // joint PD stiffness, N m / rad
  double kd = 2.0;    // joint PD damping, N m s / rad
  double stiffness = 4000.0;   // SLIP spring, N / m
  double damping = 30.0;       // SLIP damper, N s / m
  double rest_length = 0.44;   // hip-to-foot, m
  double pitch_kp = 60.0;      // stance hip torque per rad of body pitch
  double pitch_kd = 2.0;       // stance hip torque per rad/s of pitch rate
};

/// Heuristic controller: joint PD toward the mode's reference posture for
/// every leg that is not in contact, and a SLIP spring force along the
/// hip-foot line of each stance leg mapped to torques by -J^T f, plus a
/// stance hip torque that levels the body.
/// Torques are clipped to twice the actuator limit.
class WarmStartPolicy {
 public:
  WarmStartPolicy(rbd::RobotModel model, std::vector<hybrid::Mode> modes,
                  const BoundingReferences &refs, WarmStartParams params = {});

  Vector control(int mode, const rbd::State &x) const;

  /// Ground reaction on the robot from the spring-damper leg.
  Eigen::Vector2d slip_force(const rbd::State &x, rbd::Foot foot) const;
  /// PD torques of one leg's two joints toward the mode's posture.
  Eigen::Vector2d pd_torques(int mode, const rbd::State &x, rbd::Foot foot) const;
  const WarmStartParams &params() const { return params_; }

 private:
  rbd::RobotModel model_;
  std::vector<hybrid::Mode> modes_;
  std::vector<Posture> targets_;
  WarmStartParams params_;
};

/// Runs the policy through every phase of disc and records the torques. If
/// the closed-loop rollout fails the result is all zeros (with a warning).
ControlSequence warm_start(const hybrid::Discretization &disc,
                           const WarmStartPolicy &policy, const Vector &x0);

}  // namespace hsddp::bounding
