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
#include <memory>

#include "hsddp/bounding/bounding_cost.hpp"
#include "hsddp/bounding/warm_start.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/hybrid/robot_system.hpp"

namespace hsddp::bounding {

struct BoundingConfig {
  double back_stance = 0.080;   // s
  double flight = 0.072;        // s, both flight modes
  double front_stance = 0.072;  // s
  double h = 0.001;             // s
  int knots_per_mode = 40;      // time-scaled problems
  BoundingWeights weights;
  BoundingReferences references;
  WarmStartParams warm_start;
  // Initial configuration: back foot on the ground, level body.
  std::array<double, 4> initial_joints{-0.8, 1.6, -0.6, 1.2};
  double initial_pitch = 0.0;
  double initial_speed = 1.0;
};

/// Everything a bounding run needs.
struct BoundingProblem {
  rbd::RobotModel model;
  hybrid::ModeSchedule schedule;
  double h = 0.001;
  int knots_per_mode = 40;
  std::shared_ptr<const hybrid::RobotHybridSystem> system;
  std::shared_ptr<const BoundingCost> cost;
  rbd::State x0;
  std::shared_ptr<const WarmStartPolicy> policy;

  int horizon() const;  // fixed-step knots
  std::shared_ptr<const hybrid::FixedStepDiscretization> fixed_step() const;
  std::shared_ptr<const hybrid::TimeScaledDiscretization> time_scaled() const;
  Vector durations() const;
};

/// Back foot on the ground at the initial joint angles, body moving forward
/// and the back-leg joint rates chosen so the back foot is at rest.
rbd::State initial_state(const rbd::RobotModel &model, const BoundingConfig &config);

BoundingProblem build_bounding_problem(int cycles, const rbd::RobotModel &model,
                                       const BoundingConfig &config);
/// Same with an explicit schedule; it must start in back stance. The
/// durations need not be multiples of h until fixed_step() is asked for.
BoundingProblem build_bounding_problem(hybrid::ModeSchedule schedule,
                                       const rbd::RobotModel &model,
                                       const BoundingConfig &config);

}  // namespace hsddp::bounding
