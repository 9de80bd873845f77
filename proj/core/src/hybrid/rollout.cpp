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

#include "hsddp/hybrid/rollout.hpp"

#include <memory>

#include "hsddp/hybrid/robot_system.hpp"

namespace hsddp::hybrid {

Trajectory rollout(const Discretization &disc, const ControlSequence &controls,
                   const Vector &x0) {
  if (static_cast<int>(controls.size()) != disc.total_knots()) {
    throw InputError("control sequence length " +
                     std::to_string(controls.size()) + " does not match " +
                     std::to_string(disc.total_knots()) + " knots");
  }
  if (x0.size() != disc.state_dim() || !x0.allFinite()) {
    throw InputError("initial state has the wrong size or is not finite");
  }
  Trajectory traj;
  traj.phases.resize(disc.num_phases());
  Vector x = x0;
  int k = 0;
  for (int i = 0; i < disc.num_phases(); ++i) {
    PhaseTrajectory &p = traj.phases[i];
    const int n = disc.knots(i);
    p.phase = i;
    p.states.reserve(n + 1);
    p.controls.reserve(n);
    p.aux.reserve(n);
    p.states.push_back(x);
    for (int j = 0; j < n; ++j, ++k) {
      Vector aux;
      try {
        x = disc.step(i, x, controls[k], &aux);
      } catch (const NumericalError &e) {
        throw RolloutError(std::string(e.what()) + " (mode " +
                               std::to_string(i) + ", knot " +
                               std::to_string(k) + ")",
                           i, k, e.rcond());
      }
      if (!x.allFinite()) {
        throw RolloutError("non-finite state (mode " + std::to_string(i) +
                               ", knot " + std::to_string(k) + ")",
                           i, k, 0.0);
      }
      p.controls.push_back(controls[k]);
      p.aux.push_back(std::move(aux));
      p.states.push_back(x);
    }
    if (i + 1 < disc.num_phases()) {
      try {
        x = disc.reset(i, x, &p.impulse);
      } catch (const NumericalError &e) {
        throw RolloutError(std::string(e.what()) + " (reset after mode " +
                               std::to_string(i) + ")",
                           i, k, e.rcond());
      }
    } else {
      p.impulse.resize(0);
    }
  }
  return traj;
}

Trajectory rollout(const rbd::RobotModel &model, const ModeSchedule &schedule,
                   const ControlSequence &controls, const rbd::State &x0,
                   double h) {
  auto system = std::make_shared<RobotHybridSystem>(model, schedule.modes());
  FixedStepDiscretization disc(system, schedule, h);
  return rollout(disc, controls, x0.stacked());
}

Vector AugmentedState::stacked() const {
  Vector out(rbd::kStateDim + z.size());
  out << x.stacked(), z;
  return out;
}

Trajectory rollout_scaled(const rbd::RobotModel &model,
                          const ModeSchedule &schedule,
                          const ControlSequence &controls,
                          const AugmentedState &x0, int knots_per_mode) {
  auto system = std::make_shared<RobotHybridSystem>(model, schedule.modes());
  TimeScaledDiscretization disc(system, knots_per_mode);
  return rollout(disc, controls, disc.augment(x0.x.stacked(), x0.z));
}

}  // namespace hsddp::hybrid
