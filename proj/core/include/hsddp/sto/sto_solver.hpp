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
#include <ostream>
#include <vector>

#include "hsddp/constraints/outer_loop.hpp"
#include "hsddp/hybrid/discretization.hpp"

namespace hsddp::sto {

struct StoOptions {
  constraints::OuterLoopOptions outer;
  int max_iterations = 30;
  double step_tolerance = 1e-4;  // on the Newton step norm, seconds
  double min_duration = 0.005;
  double step_factor = 0.5;
  int max_backtracks = 10;
  double reg_init = 1e-9;
  double reg_max = 1e8;
  double reg_increase = 10.0;
  /// Replay the open-loop controls when evaluating timing candidates.
  bool feedforward_baseline = false;
  /// Restart multipliers from zero (and penalty, delta from their initial
  /// values) after each timing update instead of warm-starting them.
  bool reset_multipliers = false;
};

struct TimingIterate {
  int iteration = 0;
  Vector z;
  double total_time = 0.0;
  double cost = 0.0;       // converged augmented cost at z
  double base_cost = 0.0;
  double violation = 0.0;
  Vector vz;
  Matrix vzz;
  Vector newton_step;
  double reg = 0.0;        // added to Vzz before inverting
  double step = 0.0;       // accepted eps_z (0 if none)
  bool floor_active = false;
};

struct StoReport {
  std::vector<TimingIterate> iterations;
  bool feedforward_baseline = false;
  bool converged = false;
  bool stalled = false;
  std::string reason;
};

struct StoResult {
  Vector z;
  constraints::OuterResult inner;  // converged solve at z
  StoReport report;
};

/// Switching-time optimization on a time-scaled discretization. x0 is the
/// system state; z0 the initial mode durations.
StoResult sto_solve(std::shared_ptr<const hybrid::TimeScaledDiscretization> disc,
                    std::shared_ptr<const hybrid::StageCost> cost,
                    const ControlSequence &initial_controls, const Vector &x0,
                    const Vector &z0, const StoOptions &options);

/// sto_solve() with open-loop candidate evaluation (gains zeroed).
StoResult sto_solve_feedforward_baseline(
    std::shared_ptr<const hybrid::TimeScaledDiscretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost,
    const ControlSequence &initial_controls, const Vector &x0, const Vector &z0,
    StoOptions options);

/// Newton step -Vzz^-1 Vz with Vzz regularized until positive definite.
/// reg receives the regularization that was needed.
Vector newton_step(const Vector &vz, const Matrix &vzz, double reg_init,
                   double reg_max, double reg_increase, double &reg);

void write_sto_csv(std::ostream &os, const StoReport &report);

}  // namespace hsddp::sto
