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

#include <ostream>
#include <string>
#include <vector>

#include "hsddp/ddp/solver.hpp"

namespace hsddp::sto {

/// Step-size sweep around one nominal solution of a time-scaled problem.
/// Curves: "timing" (eps = 0, eps_z = s), "control" (eps = s, eps_z = 0) and
/// "both" (eps = eps_z = s).
struct SensitivityRow {
  std::string curve;
  double s = 0.0;
  double eps = 0.0;
  double eps_z = 0.0;
  double predicted = 0.0;  // change from the quadratic value model
  double actual = 0.0;     // change from a closed-loop rollout (+inf on failure)
};

struct SensitivityInput {
  Trajectory nominal;
  double cost = 0.0;     // cost of nominal
  ddp::Policy policy;
  ddp::ValueExpansion value;  // at the initial knot
  Vector x0;             // augmented initial state [x; z]
  Vector dz;             // timing direction (Newton step)
};

std::vector<SensitivityRow> step_sensitivity_sweep(
    const ddp::OptimalControlProblem &problem, const SensitivityInput &input,
    const std::vector<double> &steps);

/// 0, 0.05, ..., 1.0
std::vector<double> default_step_grid();

/// Largest s whose actual change is negative on the given curve (0 if none).
double largest_decreasing_step(const std::vector<SensitivityRow> &rows,
                               const std::string &curve);

/// Long format: one row per (curve, s, kind) with kind predicted or actual.
void write_sensitivity_csv(std::ostream &os,
                           const std::vector<SensitivityRow> &rows);

}  // namespace hsddp::sto
