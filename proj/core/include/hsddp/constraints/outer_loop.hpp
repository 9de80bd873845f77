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

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hsddp/constraints/augmented_problem.hpp"
#include "hsddp/ddp/solver.hpp"

namespace hsddp::constraints {

struct OuterLoopOptions {
  bool use_al = true;
  bool use_reb = true;
  double sigma = 5.0;
  double beta = 8.0;
  double al_tolerance = 1e-4;
  int max_al_iterations = 10;
  PenaltyForm form = PenaltyForm::kSquaredHalf;
  ReBState reb;
  HessianMode hessian = HessianMode::kGaussNewton;
  ddp::SolverOptions ddp;
};

/// One pass of the outer loop: a DDP solve at fixed penalty and barrier data.
struct ALIterationRecord {
  int eta = 0;
  double sigma = 0.0;
  double max_lambda = 0.0;
  double delta = 0.0;
  double violation = 0.0;  // sum of squared switching residuals
  double base_cost = 0.0;
  double cost = 0.0;       // augmented cost at the end of the solve
  double min_margin = 0.0;
  int ddp_iterations = 0;
  bool ddp_converged = false;
};

struct OuterReport {
  std::vector<ALIterationRecord> al_iterations;
  ddp::SolveReport ddp;  // all DDP iterations, in order
  std::vector<int> ddp_al_index;  // outer iteration of each ddp entry
  bool converged = false;
  std::string reason;
};

struct OuterResult {
  ddp::Solution solution;  // of the last DDP solve
  ALState al;              // data the last solve used
  std::optional<ReBState> reb;
  OuterReport report;
  double violation = 0.0;
  double base_cost = 0.0;
};

/// Warm-start data for re-entering the loop (multipliers, penalty, delta).
struct OuterWarmStart {
  ALState al;
  std::optional<ReBState> reb;
};

/// Augmented Lagrangian loop over DDP solves: while the switching violation
/// exceeds the tolerance, update the multipliers and penalty, shrink delta
/// and re-solve from the previous optimum.
OuterResult outer_loop(std::shared_ptr<const hybrid::Discretization> disc,
                       std::shared_ptr<const hybrid::StageCost> cost,
                       const ControlSequence &initial_controls,
                       const Vector &x0, const OuterLoopOptions &options,
                       const std::optional<OuterWarmStart> &warm = std::nullopt);

/// Problem with exactly the data an outer-loop result was solved with.
ConstrainedHybridProblem problem_of(
    std::shared_ptr<const hybrid::Discretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost, const OuterResult &result,
    const OuterLoopOptions &options);

void write_al_csv(std::ostream &os, const OuterReport &report);
/// DDP iteration log with the outer iteration index as the first column.
void write_ddp_csv(std::ostream &os, const OuterReport &report);

}  // namespace hsddp::constraints
