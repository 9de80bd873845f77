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

#include "hsddp/hybrid/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsddp/hybrid/robot_system.hpp"

namespace hsddp::hybrid {

namespace {

void check_phases(const HybridSystem &system, const Trajectory &traj) {
  if (static_cast<int>(traj.phases.size()) != system.num_modes()) {
    throw InputError("trajectory has " + std::to_string(traj.phases.size()) +
                     " phases but the schedule has " +
                     std::to_string(system.num_modes()) + " modes");
  }
}

}  // namespace

double SwitchingConstraintSet::sum_squares() const {
  double s = 0.0;
  for (const auto &r : residuals) s += r.value * r.value;
  return s;
}

double SwitchingConstraintSet::max_abs() const {
  double m = 0.0;
  for (const auto &r : residuals) m = std::max(m, std::abs(r.value));
  return m;
}

SwitchingConstraintSet switching_residuals(const HybridSystem &system,
                                           const Trajectory &traj) {
  check_phases(system, traj);
  const auto *robot = dynamic_cast<const RobotHybridSystem *>(&system);
  SwitchingConstraintSet out;
  for (int i = 0; i < system.num_modes(); ++i) {
    if (!system.has_switching_constraint(i)) continue;
    SwitchingResidual r;
    r.mode = i;
    if (robot) r.foot = robot->mode(i).touchdown_foot;
    const Vector &x = traj.phases[i].states.back();
    r.value = system.switching_gap(i, x.head(system.state_dim()));
    out.residuals.push_back(r);
  }
  return out;
}

SwitchingConstraintSet switching_residuals(const rbd::RobotModel &model,
                                           const Trajectory &traj,
                                           const ModeSchedule &schedule) {
  return switching_residuals(RobotHybridSystem(model, schedule.modes()), traj);
}

std::vector<KnotResiduals> inequality_residuals(const HybridSystem &system,
                                                const Trajectory &traj) {
  check_phases(system, traj);
  const int n = system.state_dim();
  std::vector<KnotResiduals> out;
  for (int i = 0; i < system.num_modes(); ++i) {
    const PhaseTrajectory &p = traj.phases[i];
    for (int k = 0; k < p.knots(); ++k) {
      KnotResiduals r;
      r.mode = i;
      r.knot = k;
      system.inequalities(i, p.states[k].head(n), p.controls[k], p.aux[k],
                          r.margins);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<KnotResiduals> inequality_residuals(const rbd::RobotModel &model,
                                                const Trajectory &traj,
                                                const ModeSchedule &schedule) {
  return inequality_residuals(RobotHybridSystem(model, schedule.modes()), traj);
}

double min_margin(const std::vector<KnotResiduals> &residuals) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto &r : residuals) {
    if (r.margins.size() > 0) m = std::min(m, r.margins.minCoeff());
  }
  return m;
}

}  // namespace hsddp::hybrid
