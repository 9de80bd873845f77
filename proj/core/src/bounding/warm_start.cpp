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

#include "hsddp/bounding/warm_start.hpp"

#include <algorithm>
#include <iostream>

#include "hsddp/rbd/planar_chain.hpp"

namespace hsddp::bounding {

WarmStartPolicy::WarmStartPolicy(rbd::RobotModel model,
                                 std::vector<hybrid::Mode> modes,
                                 const BoundingReferences &refs,
                                 WarmStartParams params)
    : model_(std::move(model)), modes_(std::move(modes)), params_(params) {
  if (!(params_.rest_length > 0.0) || params_.stiffness < 0.0 ||
      params_.damping < 0.0 || params_.kp < 0.0 || params_.kd < 0.0) {
    throw InputError("invalid warm-start parameters");
  }
  for (const auto &m : modes_) targets_.push_back(refs.of(m.kind));
}

Eigen::Vector2d WarmStartPolicy::slip_force(const rbd::State &x,
                                            rbd::Foot foot) const {
  const Eigen::Vector2d r =
      rbd::hip_position(model_, x.q, foot) - rbd::foot_position(model_, x.q, foot);
  const double len = r.norm();
  if (len < 1e-9) return Eigen::Vector2d::Zero();
  const Eigen::Vector2d dir = r / len;
  // Relative velocity of hip and foot along the leg.
  const auto jf = rbd::foot_jacobian(model_, x.q, foot);
  const auto jh = rbd::detail::evaluate_point<double>(
                      rbd::detail::hip_point(model_, foot), x.q, x.v)
                      .jacobian;
  const double rate = dir.dot((jh - jf) * x.v);
  // A leg can only push on the ground.
  const double f = std::max(0.0, params_.stiffness * (params_.rest_length - len) -
                                     params_.damping * rate);
  return f * dir;
}

Eigen::Vector2d WarmStartPolicy::pd_torques(int mode, const rbd::State &x,
                                            rbd::Foot foot) const {
  const auto idx = rbd::RobotModel::leg_coordinates(foot);
  const auto &target = targets_.at(mode).joints;
  Eigen::Vector2d tau;
  for (int j = 0; j < 2; ++j) {
    const int c = idx[j];
    tau(j) = params_.kp * (target[c - rbd::kFrontHip] - x.q(c)) -
             params_.kd * x.v(c);
  }
  return tau;
}

Vector WarmStartPolicy::control(int mode, const rbd::State &x) const {
  const hybrid::Mode &m = modes_.at(mode);
  Vector u = Vector::Zero(rbd::kNumJoints);
  for (rbd::Foot foot : rbd::RobotModel::feet()) {
    const auto idx = rbd::RobotModel::leg_coordinates(foot);
    Eigen::Vector2d tau;
    if (m.contacts.contains(foot)) {
      const Eigen::Vector2d f = slip_force(x, foot);
      const auto jf = rbd::foot_jacobian(model_, x.q, foot);
      Eigen::Matrix2d jleg;
      jleg << jf.col(idx[0]), jf.col(idx[1]);
      tau = -jleg.transpose() * f;
      tau(0) += params_.pitch_kp * x.q(rbd::kPitch) +
                params_.pitch_kd * x.v(rbd::kPitch);
    } else {
      tau = pd_torques(mode, x, foot);
    }
    u(idx[0] - rbd::kFrontHip) = tau(0);
    u(idx[1] - rbd::kFrontHip) = tau(1);
  }
  const double lim = 2.0 * model_.torque_limit();
  return u.cwiseMax(-lim).cwiseMin(lim);
}

ControlSequence warm_start(const hybrid::Discretization &disc,
                           const WarmStartPolicy &policy, const Vector &x0) {
  ControlSequence out;
  out.reserve(disc.total_knots());
  const int n = disc.system_dim();
  try {
    Vector x = x0;
    for (int i = 0; i < disc.num_phases(); ++i) {
      for (int k = 0; k < disc.knots(i); ++k) {
        Vector u = policy.control(i, rbd::State::from_stacked(x.head(n)));
        x = disc.step(i, x, u, nullptr);
        if (!x.allFinite()) throw NumericalError("non-finite warm-start state");
        out.push_back(std::move(u));
      }
      if (i + 1 < disc.num_phases()) x = disc.reset(i, x, nullptr);
    }
  } catch (const std::exception &e) {
    std::cerr << "warning: warm-start rollout failed (" << e.what()
              << "); using zero controls\n";
    out.assign(disc.total_knots(), Vector::Zero(disc.control_dim()));
  }
  return out;
}

}  // namespace hsddp::bounding
