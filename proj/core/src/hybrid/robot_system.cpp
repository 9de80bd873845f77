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

#include "hsddp/hybrid/robot_system.hpp"

#include <cmath>
#include <iostream>

namespace hsddp::hybrid {

namespace {

rbd::Torques as_torques(const Vector &u) {
  if (u.size() != rbd::kNumJoints) {
    throw InputError("control vector must have 4 entries");
  }
  return u;
}

}  // namespace

RobotHybridSystem::RobotHybridSystem(rbd::RobotModel model,
                                     std::vector<Mode> modes)
    : model_(std::move(model)), modes_(std::move(modes)) {
  if (modes_.empty()) throw InputError("robot system needs at least one mode");
}

Vector RobotHybridSystem::flow(int mode, const Vector &x, const Vector &u,
                               Vector *aux) const {
  const rbd::State s = rbd::State::from_stacked(x);
  const rbd::ContactSolution sol =
      rbd::contact_dynamics(model_, s, as_torques(u), modes_.at(mode).contacts);
  if (aux) *aux = sol.stacked_forces();
  Vector xdot(rbd::kStateDim);
  xdot << s.v, sol.qdd;
  return xdot;
}

void RobotHybridSystem::flow_jacobians(int mode, const Vector &x,
                                       const Vector &u,
                                       FlowJacobians &out) const {
  const rbd::State s = rbd::State::from_stacked(x);
  const rbd::FlowDerivatives d = rbd::flow_derivatives(
      model_, s, as_torques(u), modes_.at(mode).contacts);
  constexpr int n = rbd::kNumCoordinates;
  out.dfdx = Matrix::Zero(rbd::kStateDim, rbd::kStateDim);
  out.dfdx.topRightCorner(n, n).setIdentity();
  out.dfdx.bottomRows(n) = d.qdd_x;
  out.dfdu = Matrix::Zero(rbd::kStateDim, rbd::kNumJoints);
  out.dfdu.bottomRows(n) = d.qdd_u;
  out.aux_x = d.forces_x;
  out.aux_u = d.forces_u;
}

bool RobotHybridSystem::has_reset(int mode) const {
  return modes_.at(mode).has_impact_at_exit;
}

Vector RobotHybridSystem::reset(int mode, const Vector &x,
                                Vector *impulse) const {
  const Mode &m = modes_.at(mode);
  if (!m.has_impact_at_exit) {
    if (impulse) impulse->resize(0);
    return x;
  }
  const rbd::State s = rbd::State::from_stacked(x);
  const double rate = rbd::gap_rate(model_, s, *m.touchdown_foot);
  if (rate == 0.0) {
    std::cerr << "warning: grazing touchdown at the end of mode " << mode
              << " (zero gap rate); applying the impact map anyway\n";
  }
  const rbd::ImpactResult r = rbd::impact_map(model_, s, *m.touchdown_foot);
  if (impulse) *impulse = r.impulse;
  return r.post.stacked();
}

Matrix RobotHybridSystem::reset_jacobian(int mode, const Vector &x) const {
  const Mode &m = modes_.at(mode);
  if (!m.has_impact_at_exit) return Matrix::Identity(x.size(), x.size());
  return rbd::reset_jacobian(model_, rbd::State::from_stacked(x),
                             *m.touchdown_foot);
}

bool RobotHybridSystem::has_switching_constraint(int mode) const {
  return modes_.at(mode).touchdown_foot.has_value();
}

double RobotHybridSystem::switching_gap(int mode, const Vector &x) const {
  const Mode &m = modes_.at(mode);
  if (!m.touchdown_foot) return 0.0;
  return rbd::gap(model_, x.head<rbd::kNumCoordinates>(), *m.touchdown_foot);
}

void RobotHybridSystem::switching_gap_derivatives(int mode, const Vector &x,
                                                  Vector &gradient,
                                                  Matrix &hessian) const {
  gradient = Vector::Zero(rbd::kStateDim);
  hessian = Matrix::Zero(rbd::kStateDim, rbd::kStateDim);
  const Mode &m = modes_.at(mode);
  if (!m.touchdown_foot) return;
  const rbd::GapDerivatives d =
      rbd::gap_derivatives(model_, x.head<rbd::kNumCoordinates>(), *m.touchdown_foot);
  gradient.head<rbd::kNumCoordinates>() = d.gradient;
  hessian.topLeftCorner<rbd::kNumCoordinates, rbd::kNumCoordinates>() = d.hessian;
}

int RobotHybridSystem::num_inequalities(int mode) const {
  return 2 * rbd::kNumJoints + 3 * modes_.at(mode).contacts.size();
}

void RobotHybridSystem::inequalities(int mode, const Vector & /*x*/,
                                     const Vector &u, const Vector &aux,
                                     Vector &margins) const {
  const double umax = model_.torque_limit();
  const double mu = model_.friction();
  const int contacts = modes_.at(mode).contacts.size();
  margins.resize(num_inequalities(mode));
  for (int j = 0; j < rbd::kNumJoints; ++j) {
    margins(2 * j) = umax - u(j);
    margins(2 * j + 1) = umax + u(j);
  }
  const int base = 2 * rbd::kNumJoints;
  for (int c = 0; c < contacts; ++c) {
    const double lx = aux(2 * c);
    const double lz = aux(2 * c + 1);
    margins(base + 3 * c) = lz;
    margins(base + 3 * c + 1) = mu * lz - lx;
    margins(base + 3 * c + 2) = mu * lz + lx;
  }
}

void RobotHybridSystem::inequality_jacobians(int mode, const Vector &x,
                                             const Vector &u,
                                             const Vector & /*aux*/,
                                             const FlowJacobians &flow,
                                             Matrix &cx, Matrix &cu) const {
  const double mu = model_.friction();
  const int contacts = modes_.at(mode).contacts.size();
  const int m = num_inequalities(mode);
  cx = Matrix::Zero(m, x.size());
  cu = Matrix::Zero(m, u.size());
  for (int j = 0; j < rbd::kNumJoints; ++j) {
    cu(2 * j, j) = -1.0;
    cu(2 * j + 1, j) = 1.0;
  }
  const int base = 2 * rbd::kNumJoints;
  for (int c = 0; c < contacts; ++c) {
    const auto lx_x = flow.aux_x.row(2 * c);
    const auto lz_x = flow.aux_x.row(2 * c + 1);
    const auto lx_u = flow.aux_u.row(2 * c);
    const auto lz_u = flow.aux_u.row(2 * c + 1);
    cx.row(base + 3 * c) = lz_x;
    cx.row(base + 3 * c + 1) = mu * lz_x - lx_x;
    cx.row(base + 3 * c + 2) = mu * lz_x + lx_x;
    cu.row(base + 3 * c) = lz_u;
    cu.row(base + 3 * c + 1) = mu * lz_u - lx_u;
    cu.row(base + 3 * c + 2) = mu * lz_u + lx_u;
  }
}

}  // namespace hsddp::hybrid
