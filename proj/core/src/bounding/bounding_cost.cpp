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

#include "hsddp/bounding/bounding_cost.hpp"

namespace hsddp::bounding {

using rbd::kNumCoordinates;
using rbd::kStateDim;

const Posture &BoundingReferences::of(hybrid::ModeKind kind) const {
  switch (kind) {
    case hybrid::ModeKind::kBackStance: return back_stance;
    case hybrid::ModeKind::kFlight1: return flight_1;
    case hybrid::ModeKind::kFrontStance: return front_stance;
    case hybrid::ModeKind::kFlight2: return flight_2;
  }
  throw InputError("unknown mode kind");
}

Vector reference_state(const Posture &posture, double forward_speed) {
  Vector x = Vector::Zero(kStateDim);
  x(rbd::kBodyZ) = posture.height;
  x(rbd::kPitch) = posture.pitch;
  for (int j = 0; j < 4; ++j) x(rbd::kFrontHip + j) = posture.joints[j];
  x(kNumCoordinates + rbd::kBodyX) = forward_speed;
  return x;
}

BoundingCost::BoundingCost(const hybrid::ModeSchedule &schedule,
                           const BoundingWeights &w,
                           const BoundingReferences &refs) {
  const double entries[] = {w.forward_speed, w.height, w.pitch, w.joints,
                            w.body_velocity, w.joint_velocity, w.control,
                            w.terminal_scale};
  for (double e : entries) {
    if (!(e >= 0.0)) throw InputError("cost weights must be nonnegative");
  }
  if (!(w.control > 0.0)) throw InputError("control weight must be positive");
  q_ = Vector::Zero(kStateDim);
  q_(rbd::kBodyZ) = w.height;
  q_(rbd::kPitch) = w.pitch;
  q_.segment(rbd::kFrontHip, 4).setConstant(w.joints);
  q_(kNumCoordinates + rbd::kBodyX) = w.forward_speed;
  q_(kNumCoordinates + rbd::kBodyZ) = w.body_velocity;
  q_(kNumCoordinates + rbd::kPitch) = w.body_velocity;
  q_.tail(4).setConstant(w.joint_velocity);
  qf_ = w.terminal_scale * q_;
  r_ = Vector::Constant(rbd::kNumJoints, w.control);
  for (const auto &m : schedule.modes()) {
    refs_.push_back(reference_state(refs.of(m.kind), refs.forward_speed));
  }
}

double BoundingCost::running(int mode, const Vector &x, const Vector &u) const {
  const Vector e = x - refs_.at(mode);
  return e.dot(q_.cwiseProduct(e)) + u.dot(r_.cwiseProduct(u));
}

void BoundingCost::running_expansion(int mode, const Vector &x, const Vector &u,
                                     RunningExpansion &out) const {
  const Vector e = x - refs_.at(mode);
  out.value = e.dot(q_.cwiseProduct(e)) + u.dot(r_.cwiseProduct(u));
  out.lx = 2.0 * q_.cwiseProduct(e);
  out.lu = 2.0 * r_.cwiseProduct(u);
  out.lxx = Matrix(2.0 * q_.asDiagonal());
  out.luu = Matrix(2.0 * r_.asDiagonal());
  out.lux = Matrix::Zero(u.size(), x.size());
}

double BoundingCost::terminal(int mode, const Vector &x) const {
  const Vector e = x - refs_.at(mode);
  return e.dot(qf_.cwiseProduct(e));
}

void BoundingCost::terminal_expansion(int mode, const Vector &x,
                                      TerminalExpansion &out) const {
  const Vector e = x - refs_.at(mode);
  out.value = e.dot(qf_.cwiseProduct(e));
  out.phix = 2.0 * qf_.cwiseProduct(e);
  out.phixx = Matrix(2.0 * qf_.asDiagonal());
}

double eval_cost(const Trajectory &traj, const BoundingCost &cost,
                 const hybrid::ModeSchedule &schedule, double h) {
  if (static_cast<int>(traj.phases.size()) != schedule.num_modes()) {
    throw InputError("trajectory does not match the schedule");
  }
  double j = 0.0;
  for (int i = 0; i < schedule.num_modes(); ++i) {
    const PhaseTrajectory &p = traj.phases[i];
    for (int k = 0; k < p.knots(); ++k) {
      j += h * cost.running(i, p.states[k].head(kStateDim), p.controls[k]);
    }
    j += cost.terminal(i, p.states.back().head(kStateDim));
  }
  return j;
}

}  // namespace hsddp::bounding
