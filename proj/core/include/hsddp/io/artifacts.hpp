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
#include <ostream>
#include <string>

#include "hsddp/common/trajectory.hpp"
#include "hsddp/constraints/augmented_lagrangian.hpp"
#include "hsddp/constraints/relaxed_barrier.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/hybrid/robot_system.hpp"

namespace hsddp::io {

/// Missing or unreadable input artifact (a solution file).
class MissingInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-knot rows of a robot trajectory:
///   row,mode,kind,knot,t,q0..q6,v0..v6,u0..u3,lambda_front_x,lambda_front_z,
///   lambda_back_x,lambda_back_z
/// row is "knot" for a control knot and "mode_end" for the pre-transition
/// state closing each mode (u and lambda empty). t is the time at the start of
/// the knot. Forces of feet not in contact are 0.
void write_trajectory_csv(std::ostream &os, const hybrid::Discretization &disc,
                          const hybrid::RobotHybridSystem &system,
                          const Trajectory &traj);

/// Constraint satisfaction checks over every knot of a robot trajectory.
struct TrajectoryMetrics {
  double total_time = 0.0;
  double max_abs_torque = 0.0;
  double min_normal_force = 0.0;      // over stance knots (+inf if none)
  double max_friction_excess = 0.0;   // max |lambda_x| - mu lambda_z (-inf if none)
  double min_margin = 0.0;            // smallest inequality margin
  double violation = 0.0;             // sum of squared switching residuals
  double max_abs_residual = 0.0;
};

TrajectoryMetrics trajectory_metrics(const hybrid::Discretization &disc,
                                     const hybrid::RobotHybridSystem &system,
                                     const Trajectory &traj);

/// Everything needed to restart from a solved problem.
struct SavedSolution {
  std::string kind;               // "solve" or "sto"
  std::string config_json;        // config the solution came from
  int cycles = 0;
  Vector durations;               // mode durations [s]
  ControlSequence controls;
  std::optional<constraints::ALState> al;
  std::optional<constraints::ReBState> reb;
  bool converged = false;
};

std::string solution_to_json(const SavedSolution &solution);
/// Throws MissingInputError when the file is absent or malformed.
SavedSolution load_solution(const std::string &path);

/// Writes text to a file, replacing it. Throws std::runtime_error on failure.
void write_file(const std::string &path, const std::string &text);

}  // namespace hsddp::io
