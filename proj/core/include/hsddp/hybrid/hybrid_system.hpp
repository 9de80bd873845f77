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

#include "hsddp/common/types.hpp"

namespace hsddp::hybrid {

/// Derivatives of the continuous flow xdot = f_i(x, u) and of its auxiliary
/// outputs (contact forces for the robot).
struct FlowJacobians {
  Matrix dfdx;
  Matrix dfdu;
  Matrix aux_x;
  Matrix aux_u;
};

/// Continuous-time hybrid system over a fixed mode sequence.
///
/// Mode i flows with f_i until its scheduled end, where an optional reset
/// P_i maps x- to x+. Modes may carry a switching constraint g_i(x-) = 0 and
/// inequality constraints c_i(x, u, aux) >= 0.
class HybridSystem {
 public:
  virtual ~HybridSystem() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual int num_modes() const = 0;

  virtual Vector flow(int mode, const Vector &x, const Vector &u,
                      Vector *aux) const = 0;
  virtual void flow_jacobians(int mode, const Vector &x, const Vector &u,
                              FlowJacobians &out) const = 0;

  virtual bool has_reset(int /*mode*/) const { return false; }
  virtual Vector reset(int /*mode*/, const Vector &x, Vector *impulse) const {
    if (impulse) impulse->resize(0);
    return x;
  }
  virtual Matrix reset_jacobian(int /*mode*/, const Vector &x) const {
    return Matrix::Identity(x.size(), x.size());
  }

  virtual bool has_switching_constraint(int /*mode*/) const { return false; }
  virtual double switching_gap(int /*mode*/, const Vector & /*x*/) const {
    return 0.0;
  }
  virtual void switching_gap_derivatives(int /*mode*/, const Vector &x,
                                         Vector &gradient,
                                         Matrix &hessian) const {
    gradient = Vector::Zero(x.size());
    hessian = Matrix::Zero(x.size(), x.size());
  }

  virtual int num_inequalities(int /*mode*/) const { return 0; }
  virtual void inequalities(int /*mode*/, const Vector & /*x*/,
                            const Vector & /*u*/, const Vector & /*aux*/,
                            Vector &margins) const {
    margins.resize(0);
  }
  /// Jacobians of inequalities() given the flow Jacobians at the same point.
  virtual void inequality_jacobians(int /*mode*/, const Vector &x,
                                    const Vector &u, const Vector & /*aux*/,
                                    const FlowJacobians & /*flow*/, Matrix &cx,
                                    Matrix &cu) const {
    cx.resize(0, x.size());
    cu.resize(0, u.size());
  }
};

}  // namespace hsddp::hybrid
