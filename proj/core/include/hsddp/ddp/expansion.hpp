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

#include "hsddp/common/expansion.hpp"

namespace hsddp::ddp {

struct QExpansion {
  Vector qx;
  Vector qu;
  Matrix qxx;
  Matrix quu;  // without regularization
  Matrix qux;
  double reg = 0.0;  // added to quu when the policy is extracted
};

/// Quadratic value model. The expected change of a step of size eps is
/// eps * dv1 + eps^2 / 2 * dv2, accumulated from the feedforward terms.
struct ValueExpansion {
  double dv1 = 0.0;
  double dv2 = 0.0;
  Vector vx;
  Matrix vxx;

  double expected_change(double eps = 1.0) const {
    return eps * dv1 + 0.5 * eps * eps * dv2;
  }
};

struct PolicyEntry {
  Vector kappa;
  Matrix gain;
};

/// iLQR Q-function model of one knot (no dynamics tensors).
QExpansion q_expansion(const RunningExpansion &cost, const Matrix &fx,
                       const Matrix &fu, const ValueExpansion &next,
                       double reg);

struct PolicyUpdate {
  PolicyEntry policy;
  ValueExpansion value;
};

/// kappa = -Quu^-1 Qu and K = -Quu^-1 Qux with Quu regularized by q.reg, and
/// the value model one knot earlier. nullopt when the regularized Quu is not
/// positive definite. The value model already includes next's dv terms.
std::optional<PolicyUpdate> policy_and_value_update(const QExpansion &q,
                                                    const ValueExpansion &next);

/// Value model across a reset x+ = P(x-) with mode-end cost Phi at x-.
ValueExpansion impact_value_update(const ValueExpansion &post, const Matrix &px,
                                   const TerminalExpansion &phi);

}  // namespace hsddp::ddp
