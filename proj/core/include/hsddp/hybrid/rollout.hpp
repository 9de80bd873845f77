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

#include <string>

#include "hsddp/common/trajectory.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"
#include "hsddp/rbd/contact_dynamics.hpp"

namespace hsddp::hybrid {

/// A dynamics failure inside a rollout, tagged with where it happened.
class RolloutError : public NumericalError {
 public:
  RolloutError(const std::string &what, int phase, int knot, double rcond)
      : NumericalError(what, rcond), phase_(phase), knot_(knot) {}
  int phase() const { return phase_; }
  int knot() const { return knot_; }

 private:
  int phase_;
  int knot_;
};

/// Open-loop shooting of a control sequence through every phase; applies the
/// reset at each phase end that has one.
Trajectory rollout(const Discretization &disc, const ControlSequence &controls,
                   const Vector &x0);

/// Robot rollout at a fixed step h.
Trajectory rollout(const rbd::RobotModel &model, const ModeSchedule &schedule,
                   const ControlSequence &controls, const rbd::State &x0,
                   double h);

/// System state plus the time-state z (mode durations).
struct AugmentedState {
  rbd::State x;
  Vector z;

  Vector stacked() const;
};

/// Robot rollout of the time-scaled system; each mode gets knots_per_mode
/// steps of d tau = 1 / knots_per_mode.
Trajectory rollout_scaled(const rbd::RobotModel &model,
                          const ModeSchedule &schedule,
                          const ControlSequence &controls,
                          const AugmentedState &x0, int knots_per_mode);

}  // namespace hsddp::hybrid
