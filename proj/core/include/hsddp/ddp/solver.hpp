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

#include <functional>
#include <optional>
#include <vector>

#include "hsddp/ddp/expansion.hpp"
#include "hsddp/ddp/problem.hpp"
#include "hsddp/ddp/report.hpp"

namespace hsddp::ddp {

struct SolverOptions {
  int max_iterations = 100;
  double cost_tolerance = 1e-6;  // on |expected reduction|
  double step_factor = 0.5;
  int max_backtracks = 10;
  double reg_init = 1e-9;
  double reg_min = 1e-9;
  double reg_max = 1e8;
  double reg_increase = 10.0;
  double reg_decrease = 5.0;
  /// Called after every iteration with the current nominal trajectory.
  std::function<void(IterationRecord &, const Trajectory &)> on_iteration;
};

/// Feedforward and gains for every knot, flattened across phases.
struct Policy {
  std::vector<Vector> kappa;
  std::vector<Matrix> gain;

  int knots() const { return static_cast<int>(kappa.size()); }
};

struct BackwardResult {
  Policy policy;
  ValueExpansion value;  // at the initial knot, includes the dv terms
  double reg = 0.0;
};

struct Evaluation {
  Trajectory traj;
  double cost = 0.0;
};

/// Open-loop rollout and total cost. Throws on dynamics failures.
Evaluation evaluate(const OptimalControlProblem &problem,
                    const ControlSequence &controls, const Vector &x0);

/// One backward sweep at fixed regularization; nullopt if some Quu fails to be
/// positive definite.
std::optional<BackwardResult> backward_sweep(const OptimalControlProblem &problem,
                                             const Trajectory &nominal,
                                             double reg);

/// Retries backward_sweep() with growing regularization. Throws NumericalError
/// once the regularization passes options.reg_max.
BackwardResult backward_sweep(const OptimalControlProblem &problem,
                              const Trajectory &nominal, double reg,
                              const SolverOptions &options);

/// Closed-loop rollout u = u_hat + eps kappa + K (x - x_hat) from x0.
/// nullopt when the dynamics fail or the cost is not finite.
std::optional<Evaluation> forward_sweep(const OptimalControlProblem &problem,
                                        const Trajectory &nominal,
                                        const Policy &policy, double eps,
                                        const Vector &x0);

struct Solution {
  Trajectory traj;
  double cost = 0.0;
  Policy policy;          // from the final backward sweep at traj
  ValueExpansion value;   // value model at the initial knot of traj
  double reg = 0.0;
  SolveReport report;
};

Solution solve(const OptimalControlProblem &problem,
               const ControlSequence &initial_controls, const Vector &x0,
               const SolverOptions &options = {});

}  // namespace hsddp::ddp
