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

#include "hsddp/rbd/robot_model.hpp"

#include <cmath>

namespace hsddp::rbd {

std::string to_string(Foot foot) {
  return foot == Foot::kFront ? "front" : "back";
}

Foot foot_from_string(const std::string &name) {
  if (name == "front") return Foot::kFront;
  if (name == "back") return Foot::kBack;
  throw InputError("unknown foot identifier '" + name + "'");
}

namespace {

void check_link(const LinkParameters &link, const char *name) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(link.mass) || !positive(link.inertia) ||
      !positive(link.length)) {
    throw InputError(std::string("link '") + name +
                     "' needs positive mass, inertia and length");
  }
  if (!std::isfinite(link.com_offset)) {
    throw InputError(std::string("link '") + name + "' has a non-finite CoM");
  }
}

}  // namespace

RobotModel::RobotModel(const RobotParameters &params) : params_(params) {
  check_link(params.body, "body");
  check_link(params.upper, "upper");
  check_link(params.lower, "lower");
  if (!(params.gravity > 0.0)) throw InputError("gravity must be positive");
  if (!(params.torque_limit > 0.0)) {
    throw InputError("torque limit must be positive");
  }
  if (!(params.friction > 0.0)) {
    throw InputError("friction coefficient must be positive");
  }
  if (!(params.restitution >= 0.0 && params.restitution <= 1.0)) {
    throw InputError("restitution must lie in [0, 1]");
  }

  links_ = {params.body, params.upper, params.lower, params.upper,
            params.lower};

  selection_.setZero();
  selection_(0, kFrontHip) = 1.0;
  selection_(1, kFrontKnee) = 1.0;
  selection_(2, kBackHip) = 1.0;
  selection_(3, kBackKnee) = 1.0;
}

double RobotModel::total_mass() const {
  double m = 0.0;
  for (const auto &l : links_) m += l.mass;
  return m;
}

double RobotModel::hip_offset(Foot foot) const {
  return foot == Foot::kFront ? 0.5 * params_.body.length
                              : -0.5 * params_.body.length;
}

std::array<int, 2> RobotModel::leg_coordinates(Foot foot) {
  if (foot == Foot::kFront) return {kFrontHip, kFrontKnee};
  return {kBackHip, kBackKnee};
}

}  // namespace hsddp::rbd
