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

#include <optional>
#include <vector>

#include "hsddp/common/trajectory.hpp"
#include "hsddp/hybrid/hybrid_system.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"

namespace hsddp::hybrid {

struct SwitchingResidual {
  int mode = 0;
  std::optional<rbd::Foot> foot;  // set for robot systems
  double value = 0.0;             // signed gap at the pre-transition state
};

struct SwitchingConstraintSet {
  std::vector<SwitchingResidual> residuals;

  double sum_squares() const;
  double max_abs() const;
  bool empty() const { return residuals.empty(); }
};

/// Gap residuals g(x-) at the end of every mode with a switching constraint.
/// States may carry extra trailing entries (time-state); only the system part
/// is passed on.
SwitchingConstraintSet switching_residuals(const HybridSystem &system,
                                           const Trajectory &traj);
SwitchingConstraintSet switching_residuals(const rbd::RobotModel &model,
                                           const Trajectory &traj,
                                           const ModeSchedule &schedule);

struct KnotResiduals {
  int mode = 0;
  int knot = 0;    // index within the mode
  Vector margins;  // c >= 0 form
};

std::vector<KnotResiduals> inequality_residuals(const HybridSystem &system,
                                                const Trajectory &traj);
std::vector<KnotResiduals> inequality_residuals(const rbd::RobotModel &model,
                                                const Trajectory &traj,
                                                const ModeSchedule &schedule);

/// Smallest margin over all knots (+inf if there are none).
double min_margin(const std::vector<KnotResiduals> &residuals);

}  // namespace hsddp::hybrid
