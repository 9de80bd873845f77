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
#include <vector>

#include "hsddp/io/run_config.hpp"

namespace hsddp::io {

/// Exit codes shared by every command.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitMissingInput = 3;

struct RunOutcome {
  int exit_code = kExitConverged;
  std::vector<std::string> files;  // artifacts written, in order
};

/// Fixed-step bounding solve over config.cycles gait cycles (heuristic warm
/// start, then the outer loop; config.outer.use_al / use_reb select the
/// variant). Writes trajectory.csv, ddp_log.csv, al_log.csv, solution.json and
/// summary.json into config.output_dir.
RunOutcome run_solve(const RunConfig &config, std::ostream &log);

/// Switching-time optimization over config.sto.cycles gait cycles. Writes
/// sto.csv, trajectory.csv, ddp_log.csv, al_log.csv (all of the final inner
/// solve), solution.json and summary.json.
RunOutcome run_sto(const RunConfig &config, bool feedforward_baseline,
                   std::ostream &log);

/// Step-size sweep at a saved switching-time solution. Writes sensitivity.csv
/// and summary.json. A missing solution file yields kExitMissingInput.
RunOutcome run_sensitivity(const RunConfig &config,
                           const std::string &solution_path, std::ostream &log);

}  // namespace hsddp::io
