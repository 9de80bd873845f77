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

#include "hsddp/common/expansion.hpp"
#include "hsddp/common/trajectory.hpp"

namespace hsddp::ddp {

/// Linearized dynamics and cost model at one knot.
struct KnotModel {
  Matrix fx;
  Matrix fu;
  RunningExpansion cost;
};

/// Multi-phase discrete optimal control problem solved by shooting.
///
/// Phase i runs knots(i) steps; at its end the terminal cost Phi_i is charged
/// on the pre-transition state and, unless it is the last phase, reset() maps
/// it onto the first state of phase i + 1.
class OptimalControlProblem {
 public:
  virtual ~OptimalControlProblem() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual int num_phases() const = 0;
  virtual int knots(int phase) const = 0;
  int total_knots() const {
    int n = 0;
    for (int i = 0; i < num_phases(); ++i) n += knots(i);
    return n;
  }

  virtual Vector step(int phase, const Vector &x, const Vector &u,
                      Vector *aux) const = 0;
  virtual Vector reset(int phase, const Vector &x, Vector *impulse) const = 0;
  virtual Matrix reset_jacobian(int phase, const Vector &x) const = 0;

  virtual double running_cost(int phase, const Vector &x, const Vector &u,
                              const Vector &aux) const = 0;
  virtual double terminal_cost(int phase, const Vector &x) const = 0;

  virtual void knot_model(int phase, const Vector &x, const Vector &u,
                          const Vector &aux, KnotModel &out) const = 0;
  virtual void terminal_expansion(int phase, const Vector &x,
                                  TerminalExpansion &out) const = 0;
};

}  // namespace hsddp::ddp
