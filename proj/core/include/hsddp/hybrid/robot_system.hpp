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

#include "hsddp/hybrid/hybrid_system.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"
#include "hsddp/rbd/contact_dynamics.hpp"

namespace hsddp::hybrid {

/// The planar quadruped over a mode sequence.
///
/// Inequalities per knot, all in c >= 0 form: u_max - u_j and u_max + u_j for
/// every joint, then lambda_z, mu lambda_z - lambda_x, mu lambda_z + lambda_x
/// for every active contact.
class RobotHybridSystem : public HybridSystem {
 public:
  RobotHybridSystem(rbd::RobotModel model, std::vector<Mode> modes);

  const rbd::RobotModel &model() const { return model_; }
  const Mode &mode(int i) const { return modes_.at(i); }

  int state_dim() const override { return rbd::kStateDim; }
  int control_dim() const override { return rbd::kNumJoints; }
  int num_modes() const override { return static_cast<int>(modes_.size()); }

  Vector flow(int mode, const Vector &x, const Vector &u,
              Vector *aux) const override;
  void flow_jacobians(int mode, const Vector &x, const Vector &u,
                      FlowJacobians &out) const override;

  bool has_reset(int mode) const override;
  Vector reset(int mode, const Vector &x, Vector *impulse) const override;
  Matrix reset_jacobian(int mode, const Vector &x) const override;

  bool has_switching_constraint(int mode) const override;
  double switching_gap(int mode, const Vector &x) const override;
  void switching_gap_derivatives(int mode, const Vector &x, Vector &gradient,
                                 Matrix &hessian) const override;

  int num_inequalities(int mode) const override;
  void inequalities(int mode, const Vector &x, const Vector &u,
                    const Vector &aux, Vector &margins) const override;
  void inequality_jacobians(int mode, const Vector &x, const Vector &u,
                            const Vector &aux, const FlowJacobians &flow,
                            Matrix &cx, Matrix &cu) const override;

 private:
  rbd::RobotModel model_;
  std::vector<Mode> modes_;
};

}  // namespace hsddp::hybrid
