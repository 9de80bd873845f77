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

namespace hsddp::hybrid {

/// Per-mode cost of the hybrid problem on the system state.
///
/// running() is the integrand l_i(x, u); the discretization multiplies it by
/// the knot duration. terminal() is Phi_i evaluated at the pre-transition state.
class StageCost {
 public:
  virtual ~StageCost() = default;
  virtual double running(int mode, const Vector &x, const Vector &u) const = 0;
  virtual void running_expansion(int mode, const Vector &x, const Vector &u,
                                 RunningExpansion &out) const = 0;
  virtual double terminal(int mode, const Vector &x) const = 0;
  virtual void terminal_expansion(int mode, const Vector &x,
                                  TerminalExpansion &out) const = 0;
};

}  // namespace hsddp::hybrid
