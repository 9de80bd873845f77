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

#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace hsddp::ddp {

/// One DDP iteration: a backward sweep and its line search.
struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;          // working cost after the iteration
  double expected = 0.0;      // predicted reduction at eps = 1 (>= 0 if descent)
  double actual = 0.0;        // realized reduction (0 if rejected)
  double reg = 0.0;           // regularization used by the backward sweep
  double step = 0.0;          // accepted eps, 0 if rejected
  int backtracks = 0;
  bool accepted = false;
  // Filled in by callers that know the problem structure.
  double base_cost = std::numeric_limits<double>::quiet_NaN();
  double violation = std::numeric_limits<double>::quiet_NaN();
};

struct SolveReport {
  std::vector<IterationRecord> iterations;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  bool converged = false;
  std::string reason;

  int accepted_steps() const;
};

/// Writes the per-iteration log as CSV with a header line.
void write_iteration_csv(std::ostream &os, const SolveReport &report,
                         bool header = true);

}  // namespace hsddp::ddp
