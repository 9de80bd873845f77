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

// Planar kinematic-chain helpers shared by the double and autodiff paths.
// Every point of the robot is the floating-base position plus a sum of
// offsets, each rotated by a sum of the angular coordinates.

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "hsddp/rbd/robot_model.hpp"

namespace hsddp::rbd::detail {

struct ChainTerm {
  unsigned angle_mask = 0;  // bit j set: coordinate kPitch + j adds to the angle
  double rx = 0.0;
  double rz = 0.0;
};

struct ChainPoint {
  std::array<ChainTerm, 3> terms{};
  int count = 0;
};

inline constexpr unsigned kPitchBit = 1u << 0;

inline unsigned leg_hip_bit(Foot foot) {
  return foot == Foot::kFront ? 1u << 1 : 1u << 3;
}
inline unsigned leg_knee_bit(Foot foot) {
  return foot == Foot::kFront ? 1u << 2 : 1u << 4;
}

/// Mask of angular coordinates whose sum is the absolute angle of a link.
inline unsigned link_angle_mask(Link link) {
  switch (link) {
    case kBody:
      return kPitchBit;
    case kFrontUpper:
      return kPitchBit | leg_hip_bit(Foot::kFront);
    case kFrontLower:
      return kPitchBit | leg_hip_bit(Foot::kFront) | leg_knee_bit(Foot::kFront);
    case kBackUpper:
      return kPitchBit | leg_hip_bit(Foot::kBack);
    case kBackLower:
      return kPitchBit | leg_hip_bit(Foot::kBack) | leg_knee_bit(Foot::kBack);
    default:
      return 0;
  }
}

// Legs hang along -z of their link frame; a zero joint angle points a link
// straight down from its parent.
inline ChainPoint leg_point(const RobotModel &model, Foot foot,
                            double upper_distance, double lower_distance,
                            bool include_lower) {
  ChainPoint p;
  const unsigned hip = kPitchBit | leg_hip_bit(foot);
  const unsigned knee = hip | leg_knee_bit(foot);
  p.terms[p.count++] = {kPitchBit, model.hip_offset(foot), 0.0};
  p.terms[p.count++] = {hip, 0.0, -upper_distance};
  if (include_lower) p.terms[p.count++] = {knee, 0.0, -lower_distance};
  return p;
}

inline ChainPoint link_com(const RobotModel &model, Link link) {
  const auto &upper = model.link(kFrontUpper);
  const auto &lower = model.link(kFrontLower);
  switch (link) {
    case kBody: {
      ChainPoint p;
      p.terms[p.count++] = {kPitchBit, model.link(kBody).com_offset, 0.0};
      return p;
    }
    case kFrontUpper:
      return leg_point(model, Foot::kFront, upper.com_offset, 0.0, false);
    case kFrontLower:
      return leg_point(model, Foot::kFront, upper.length, lower.com_offset,
                       true);
    case kBackUpper:
      return leg_point(model, Foot::kBack, upper.com_offset, 0.0, false);
    case kBackLower:
      return leg_point(model, Foot::kBack, upper.length, lower.com_offset,
                       true);
    default:
      return {};
  }
}

inline ChainPoint foot_point(const RobotModel &model, Foot foot) {
  return leg_point(model, foot, model.link(kFrontUpper).length,
                   model.link(kFrontLower).length, true);
}

inline ChainPoint knee_point(const RobotModel &model, Foot foot) {
  return leg_point(model, foot, model.link(kFrontUpper).length, 0.0, false);
}

inline ChainPoint hip_point(const RobotModel &model, Foot foot) {
  ChainPoint p;
  p.terms[p.count++] = {kPitchBit, model.hip_offset(foot), 0.0};
  return p;
}

template <typename T>
struct PointKinematics {
  Eigen::Matrix<T, 2, 1> position;
  Eigen::Matrix<T, 2, kNumCoordinates> jacobian;
  Eigen::Matrix<T, 2, 1> bias;  // Jdot * v
};

template <typename T, typename QVec, typename VVec>
PointKinematics<T> evaluate_point(const ChainPoint &point, const QVec &q,
                                  const VVec &v) {
  using std::cos;
  using std::sin;
  PointKinematics<T> out;
  out.position(0) = q(kBodyX);
  out.position(1) = q(kBodyZ);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < kNumCoordinates; ++j) out.jacobian(i, j) = T(0.0);
    out.bias(i) = T(0.0);
  }
  out.jacobian(0, kBodyX) = T(1.0);
  out.jacobian(1, kBodyZ) = T(1.0);

  for (int t = 0; t < point.count; ++t) {
    const ChainTerm &term = point.terms[t];
    T angle(0.0);
    T rate(0.0);
    for (int j = 0; j < 5; ++j) {
      if (term.angle_mask & (1u << j)) {
        angle += q(kPitch + j);
        rate += v(kPitch + j);
      }
    }
    const T c = cos(angle);
    const T s = sin(angle);
    const T px = c * term.rx - s * term.rz;
    const T pz = s * term.rx + c * term.rz;
    out.position(0) += px;
    out.position(1) += pz;
    for (int j = 0; j < 5; ++j) {
      if (term.angle_mask & (1u << j)) {
        out.jacobian(0, kPitch + j) -= pz;
        out.jacobian(1, kPitch + j) += px;
      }
    }
    const T rate2 = rate * rate;
    out.bias(0) -= rate2 * px;
    out.bias(1) -= rate2 * pz;
  }
  return out;
}

/// Inertia matrix H and bias C(q, v) v + tau_g of the floating-base chain.
template <typename T>
struct ModelTerms {
  Eigen::Matrix<T, kNumCoordinates, kNumCoordinates> mass_matrix;
  Eigen::Matrix<T, kNumCoordinates, 1> bias;
};

template <typename T, typename QVec, typename VVec>
ModelTerms<T> model_terms(const RobotModel &model, const QVec &q,
                          const VVec &v) {
  ModelTerms<T> out;
  for (int i = 0; i < kNumCoordinates; ++i) {
    out.bias(i) = T(0.0);
    for (int j = 0; j < kNumCoordinates; ++j) out.mass_matrix(i, j) = T(0.0);
  }
  const double g = model.gravity();
  for (int l = 0; l < kNumLinks; ++l) {
    const Link link = static_cast<Link>(l);
    const LinkParameters &params = model.link(link);
    const auto pk = evaluate_point<T>(link_com(model, link), q, v);
    const T fx = pk.bias(0);
    const T fz = pk.bias(1) + T(g);
    for (int i = 0; i < kNumCoordinates; ++i) {
      const T jxi = pk.jacobian(0, i);
      const T jzi = pk.jacobian(1, i);
      out.bias(i) += params.mass * (jxi * fx + jzi * fz);
      for (int j = i; j < kNumCoordinates; ++j) {
        out.mass_matrix(i, j) +=
            params.mass * (jxi * pk.jacobian(0, j) + jzi * pk.jacobian(1, j));
      }
    }
    const unsigned mask = link_angle_mask(link);
    for (int i = 0; i < 5; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i; j < 5; ++j) {
        if (mask & (1u << j)) out.mass_matrix(kPitch + i, kPitch + j) += params.inertia;
      }
    }
  }
  for (int i = 0; i < kNumCoordinates; ++i) {
    for (int j = 0; j < i; ++j) out.mass_matrix(i, j) = out.mass_matrix(j, i);
  }
  return out;
}

}  // namespace hsddp::rbd::detail
