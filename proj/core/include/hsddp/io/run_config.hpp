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
#include <string>
#include <vector>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/constraints/outer_loop.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"
#include "hsddp/rbd/robot_model.hpp"
#include "hsddp/sto/sto_solver.hpp"

namespace hsddp::io {

/// Bad or unknown configuration content.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

struct ModeSpec {
  hybrid::ModeKind kind = hybrid::ModeKind::kBackStance;
  double duration = 0.0;
};

struct StoSettings {
  int cycles = 1;
  int max_iterations = 30;
  double step_tolerance = 1e-4;
  double min_duration = 0.005;
  double step_factor = 0.5;
  int max_backtracks = 10;
  bool reset_multipliers = false;
};

/// Complete description of a run. Every field has a default; a config file
/// only needs the entries it changes.
struct RunConfig {
  rbd::RobotParameters robot;
  int cycles = 5;
  std::optional<std::vector<ModeSpec>> modes;  // overrides the bounding cycle
  bounding::BoundingConfig bounding;
  ddp::SolverOptions ddp;
  constraints::OuterLoopOptions outer;  // its ddp member is ignored
  StoSettings sto;
  std::string output_dir = "out";
  unsigned seed = 1;

  /// Mode schedule for a given cycle count (or the explicit mode list).
  hybrid::ModeSchedule schedule(int cycles) const;
  constraints::OuterLoopOptions outer_options() const;
  sto::StoOptions sto_options() const;
};

/// Parses JSON text; unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const std::string &json_text);
RunConfig load_config(const std::string &path);
/// Every setting with its current value, as pretty-printed JSON.
std::string config_to_json(const RunConfig &config);

std::string to_string(constraints::PenaltyForm form);
std::string to_string(constraints::HessianMode mode);

}  // namespace hsddp::io
