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

#include <vector>

#include "hsddp/common/types.hpp"

namespace hsddp {

using ControlSequence = std::vector<Vector>;

/// One mode of a hybrid trajectory. states has knots + 1 entries; the last
/// one is the pre-transition state x-_{N_i}. The post-transition state is the
/// first state of the next phase.
struct PhaseTrajectory {
  int phase = 0;
  std::vector<Vector> states;
  std::vector<Vector> controls;
  std::vector<Vector> aux;  // per-knot auxiliary outputs (contact forces)
  Vector impulse;           // reset impulse at exit; empty without a reset

  int knots() const { return static_cast<int>(controls.size()); }
};

struct Trajectory {
  std::vector<PhaseTrajectory> phases;

  int total_knots() const {
    int n = 0;
    for (const auto &p : phases) n += p.knots();
    return n;
  }
  const Vector &initial_state() const { return phases.front().states.front(); }
  const Vector &final_state() const { return phases.back().states.back(); }

  ControlSequence controls() const {
    ControlSequence out;
    out.reserve(total_knots());
    for (const auto &p : phases) {
      out.insert(out.end(), p.controls.begin(), p.controls.end());
    }
    return out;
  }
};

}  // namespace hsddp
