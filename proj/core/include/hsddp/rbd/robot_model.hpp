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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsddp/common/types.hpp"

namespace hsddp::rbd {

inline constexpr int kNumCoordinates = 7;
inline constexpr int kStateDim = 2 * kNumCoordinates;
inline constexpr int kNumJoints = 4;

using Coordinates = Eigen::Matrix<double, kNumCoordinates, 1>;
using StateVector = Eigen::Matrix<double, kStateDim, 1>;
using Torques = Eigen::Matrix<double, kNumJoints, 1>;

// Coordinate layout of q: body x, body z, body pitch, front hip, front knee,
// back hip, back knee.
enum Coordinate : int {
  kBodyX = 0,
  kBodyZ = 1,
  kPitch = 2,
  kFrontHip = 3,
  kFrontKnee = 4,
  kBackHip = 5,
  kBackKnee = 6,
};

enum class Foot : int { kFront = 0, kBack = 1 };

std::string to_string(Foot foot);
Foot foot_from_string(const std::string &name);

/// Link order: body, front upper, front lower, back upper, back lower.
enum Link : int {
  kBody = 0,
  kFrontUpper = 1,
  kFrontLower = 2,
  kBackUpper = 3,
  kBackLower = 4,
  kNumLinks = 5,
};

struct LinkParameters {
  double mass = 0.0;        // kg
  double inertia = 0.0;     // kg m^2, about the link CoM
  double length = 0.0;      // m
  double com_offset = 0.0;  // m, from the proximal joint (body: from the center)
};

/// Plain parameter record; validated when a RobotModel is built from it.
///
/// The front and back legs share the upper/lower link parameters. Each planar
/// leg stands for a left/right pair lumped in the sagittal plane.
struct RobotParameters {
  LinkParameters body{3.3, 0.056, 0.38, 0.0};
  LinkParameters upper{0.63, 0.63 * 0.21 * 0.21 / 12.0, 0.21, 0.105};
  LinkParameters lower{0.06, 0.06 * 0.21 * 0.21 / 12.0, 0.21, 0.105};
  double gravity = 9.81;
  double torque_limit = 17.0;
  double friction = 0.7;
  double restitution = 0.0;
};

/// Immutable planar quadruped description.
class RobotModel {
 public:
  RobotModel() : RobotModel(RobotParameters{}) {}
  explicit RobotModel(const RobotParameters &params);

  const RobotParameters &parameters() const { return params_; }
  const LinkParameters &link(Link link) const { return links_[link]; }

  double gravity() const { return params_.gravity; }
  double torque_limit() const { return params_.torque_limit; }
  double friction() const { return params_.friction; }
  double restitution() const { return params_.restitution; }
  double total_mass() const;

  /// Actuated-joint selection matrix S (4 x 7); generalized force = S^T tau.
  const Eigen::Matrix<double, kNumJoints, kNumCoordinates> &selection() const {
    return selection_;
  }

  /// Signed offset of the hip along the body axis.
  double hip_offset(Foot foot) const;

  /// Indices of the hip and knee coordinates of a leg.
  static std::array<int, 2> leg_coordinates(Foot foot);

  static std::vector<Foot> feet() { return {Foot::kFront, Foot::kBack}; }

 private:
  RobotParameters params_;
  std::array<LinkParameters, kNumLinks> links_;
  Eigen::Matrix<double, kNumJoints, kNumCoordinates> selection_;
};

}  // namespace hsddp::rbd
