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

#include "hsddp/bounding/bounding_problem.hpp"

#include <numeric>

namespace hsddp::bounding {

int BoundingProblem::horizon() const {
  const auto n = schedule.knot_counts(h);
  return std::accumulate(n.begin(), n.end(), 0);
}

std::shared_ptr<const hybrid::FixedStepDiscretization>
BoundingProblem::fixed_step() const {
  return std::make_shared<hybrid::FixedStepDiscretization>(system, schedule, h);
}

std::shared_ptr<const hybrid::TimeScaledDiscretization>
BoundingProblem::time_scaled() const {
  return std::make_shared<hybrid::TimeScaledDiscretization>(system, knots_per_mode);
}

Vector BoundingProblem::durations() const {
  const auto &d = schedule.durations();
  return Eigen::Map<const Vector>(d.data(), static_cast<Eigen::Index>(d.size()));
}

rbd::State initial_state(const rbd::RobotModel &model,
                         const BoundingConfig &config) {
  rbd::State x;
  x.q(rbd::kPitch) = config.initial_pitch;
  for (int j = 0; j < 4; ++j) x.q(rbd::kFrontHip + j) = config.initial_joints[j];
  x.q(rbd::kBodyZ) = -rbd::foot_position(model, x.q, rbd::Foot::kBack)(1);
  if (rbd::gap(model, x.q, rbd::Foot::kFront) < 0.0) {
    throw InputError("initial configuration puts the front foot below ground");
  }
  x.v(rbd::kBodyX) = config.initial_speed;
  const auto j = rbd::foot_jacobian(model, x.q, rbd::Foot::kBack);
  const auto leg = rbd::RobotModel::leg_coordinates(rbd::Foot::kBack);
  Eigen::Matrix2d jleg;
  jleg << j.col(leg[0]), j.col(leg[1]);
  const Eigen::Vector2d rates =
      jleg.fullPivLu().solve(-(j * x.v));
  x.v(leg[0]) = rates(0);
  x.v(leg[1]) = rates(1);
  return x;
}

BoundingProblem build_bounding_problem(int cycles, const rbd::RobotModel &model,
                                       const BoundingConfig &config) {
  if (cycles < 1) throw InputError("at least one gait cycle is required");
  return build_bounding_problem(
      hybrid::ModeSchedule::bounding(cycles, config.back_stance, config.flight,
                                     config.front_stance),
      model, config);
}

BoundingProblem build_bounding_problem(hybrid::ModeSchedule schedule,
                                       const rbd::RobotModel &model,
                                       const BoundingConfig &config) {
  if (!(config.h > 0.0)) throw InputError("integration step must be positive");
  if (config.knots_per_mode < 1) throw InputError("knots per mode must be positive");
  if (schedule.mode(0).kind != hybrid::ModeKind::kBackStance) {
    throw InputError("the schedule must start in back stance");
  }
  BoundingProblem p{model,   std::move(schedule), config.h, config.knots_per_mode,
                    nullptr, nullptr,             {},       nullptr};
  p.system = std::make_shared<hybrid::RobotHybridSystem>(model, p.schedule.modes());
  p.cost = std::make_shared<BoundingCost>(p.schedule, config.weights,
                                          config.references);
  p.x0 = initial_state(model, config);
  p.policy = std::make_shared<WarmStartPolicy>(model, p.schedule.modes(),
                                               config.references,
                                               config.warm_start);
  return p;
}

}  // namespace hsddp::bounding
