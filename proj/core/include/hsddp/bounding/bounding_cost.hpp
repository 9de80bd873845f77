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

#include <array>

#include "hsddp/common/trajectory.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"
#include "hsddp/hybrid/stage_cost.hpp"
#include "hsddp/rbd/robot_model.hpp"

namespace hsddp::bounding {

/// Diagonal state weights; forward position is never weighted.
struct BoundingWeights {
  double forward_speed = 10.0;
  double height = 15.0;
  double pitch = 1.0;
  double joints = 0.1;
  double body_velocity = 1.0;  // vertical and pitch rates
  double joint_velocity = 0.5;
  double control = 0.01;
  double terminal_scale = 10.0;
};

/// Body height, pitch and joint angles [front hip, front knee, back hip,
/// back knee] of a reference configuration.
struct Posture {
  double height = 0.33;
  double pitch = 0.0;
  std::array<double, 4> joints{-0.6, 1.2, -0.6, 1.2};
};

/// One reference posture per mode kind, each roughly the posture the robot
/// should hold at the end of that mode.
struct BoundingReferences {
  Posture back_stance{0.32, 0.0, {-0.8, 1.6, -0.9, 1.2}};
  Posture flight_1{0.35, 0.0, {-0.3, 1.0, -0.8, 1.6}};
  Posture front_stance{0.32, 0.0, {-0.9, 1.2, -0.8, 1.6}};
  Posture flight_2{0.35, 0.0, {-0.8, 1.6, -0.3, 1.0}};
  double forward_speed = 1.0;

  const Posture &of(hybrid::ModeKind kind) const;
};

/// Quadratic running and terminal cost per mode:
///   l = (x - x_ref)^T Q (x - x_ref) + u^T R u,  Phi = (x - x_ref)^T Qf (x - x_ref).
class BoundingCost : public hybrid::StageCost {
 public:
  BoundingCost(const hybrid::ModeSchedule &schedule,
               const BoundingWeights &weights, const BoundingReferences &refs);

  const Vector &reference(int mode) const { return refs_.at(mode); }
  const Vector &state_weights() const { return q_; }
  const Vector &terminal_weights() const { return qf_; }
  const Vector &control_weights() const { return r_; }

  double running(int mode, const Vector &x, const Vector &u) const override;
  void running_expansion(int mode, const Vector &x, const Vector &u,
                         RunningExpansion &out) const override;
  double terminal(int mode, const Vector &x) const override;
  void terminal_expansion(int mode, const Vector &x,
                          TerminalExpansion &out) const override;

 private:
  Vector q_;
  Vector qf_;
  Vector r_;
  std::vector<Vector> refs_;
};

/// Reference state for a mode kind: posture plus forward speed, other rates 0.
Vector reference_state(const Posture &posture, double forward_speed);

/// Sum over modes of h-scaled running costs plus the terminal cost at each
/// mode's pre-transition state.
double eval_cost(const Trajectory &traj, const BoundingCost &cost,
                 const hybrid::ModeSchedule &schedule, double h);

}  // namespace hsddp::bounding
