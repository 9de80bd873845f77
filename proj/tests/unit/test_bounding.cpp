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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/hybrid/rollout.hpp"
#include "test_problems.hpp"

namespace hsddp::bounding {
namespace {

TEST(BoundingCost, EvalCostMatchesHandSummation) {
  const BoundingConfig cfg;
  const auto bp = build_bounding_problem(1, rbd::RobotModel{}, cfg);
  const auto disc = bp.fixed_step();
  const ControlSequence u = warm_start(*disc, *bp.policy, bp.x0.stacked());
  const Trajectory t = hybrid::rollout(*disc, u, bp.x0.stacked());

  const BoundingWeights w;
  const double qdiag[14] = {0.0, w.height, w.pitch, w.joints, w.joints, w.joints, w.joints,
                            w.forward_speed, w.body_velocity, w.body_velocity,
                            w.joint_velocity, w.joint_velocity, w.joint_velocity,
                            w.joint_velocity};
  const Posture *postures[4] = {&cfg.references.back_stance, &cfg.references.flight_1,
                                &cfg.references.front_stance, &cfg.references.flight_2};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    double ref[14] = {0.0};
    ref[1] = postures[i]->height;
    ref[2] = postures[i]->pitch;
    for (int j = 0; j < 4; ++j) ref[3 + j] = postures[i]->joints[j];
    ref[7] = cfg.references.forward_speed;
    auto quad = [&](const Vector &x, double scale) {
      double s = 0.0;
      for (int j = 0; j < 14; ++j) s += scale * qdiag[j] * (x(j) - ref[j]) * (x(j) - ref[j]);
      return s;
    };
    const auto &p = t.phases[i];
    for (int k = 0; k < p.knots(); ++k) {
      total += 0.001 * (quad(p.states[k], 1.0) + w.control * p.controls[k].squaredNorm());
    }
    total += quad(p.states.back(), w.terminal_scale);
  }
  EXPECT_NEAR(eval_cost(t, *bp.cost, bp.schedule, 0.001), total, 1e-10 * total);
  EXPECT_THROW(eval_cost(Trajectory{}, *bp.cost, bp.schedule, 0.001), InputError);
}

TEST(BoundingCost, ExpansionIsExact) {
  const BoundingConfig cfg;
  const auto bp = build_bounding_problem(1, rbd::RobotModel{}, cfg);
  std::mt19937 rng(8);
  const Vector x = bp.x0.stacked() + testing::random_vector(rng, 14, -0.2, 0.2);
  const Vector u = testing::random_vector(rng, 4, -5, 5);
  RunningExpansion e;
  bp.cost->running_expansion(2, x, u, e);
  EXPECT_LT(testing::relative_error(
                e.lx, testing::numeric_gradient(
                          [&](const Vector &v) { return bp.cost->running(2, v, u); }, x)),
            1e-8);
  EXPECT_LT(testing::relative_error(
                e.lu, testing::numeric_gradient(
                          [&](const Vector &v) { return bp.cost->running(2, x, v); }, u)),
            1e-8);
  EXPECT_EQ(bp.cost->reference(1), reference_state(cfg.references.flight_1, 1.0));
  BoundingWeights bad;
  bad.control = 0.0;
  EXPECT_THROW(BoundingCost(bp.schedule, bad, cfg.references), InputError);
}

TEST(BoundingProblem, InitialStateRestsTheBackFootOnTheGround) {
  const rbd::RobotModel model;
  const BoundingConfig cfg;
  const rbd::State x = initial_state(model, cfg);
  EXPECT_NEAR(rbd::gap(model, x.q, rbd::Foot::kBack), 0.0, 1e-14);
  EXPECT_GT(rbd::gap(model, x.q, rbd::Foot::kFront), 0.0);
  EXPECT_LT((rbd::foot_jacobian(model, x.q, rbd::Foot::kBack) * x.v).norm(), 1e-12);
  EXPECT_NEAR(x.v(rbd::kBodyX), cfg.initial_speed, 1e-15);
  BoundingConfig low = cfg;
  low.initial_joints = {-0.1, 0.2, -0.8, 1.6};  // front leg longer than back
  EXPECT_THROW(initial_state(model, low), InputError);
}

TEST(BoundingProblem, BuildsConsistentPieces) {
  const BoundingConfig cfg;
  const auto bp = build_bounding_problem(5, rbd::RobotModel{}, cfg);
  EXPECT_EQ(bp.schedule.num_modes(), 20);
  EXPECT_EQ(bp.horizon(), 1480);
  EXPECT_EQ(bp.fixed_step()->total_knots(), 1480);
  EXPECT_EQ(bp.time_scaled()->total_knots(), 800);
  EXPECT_NEAR(bp.durations().sum(), 5 * 0.296, 1e-12);
  EXPECT_THROW(build_bounding_problem(0, rbd::RobotModel{}, cfg), InputError);
  const auto flight_first = hybrid::ModeSchedule(
      {hybrid::ModeKind::kFlight1, hybrid::ModeKind::kFrontStance}, {0.07, 0.07});
  EXPECT_THROW(build_bounding_problem(flight_first, rbd::RobotModel{}, cfg), InputError);
}

TEST(BoundingProblem, OptimizedTimingOnlyNeedsTheScaledProblem) {
  const BoundingConfig cfg;
  const auto odd = hybrid::ModeSchedule::bounding(1, 0.08, 0.072, 0.072)
                       .with_durations({0.0713, 0.0251, 0.0402, 0.0333});
  const auto bp = build_bounding_problem(odd, rbd::RobotModel{}, cfg);
  EXPECT_EQ(bp.time_scaled()->total_knots(), 160);
  EXPECT_THROW(bp.fixed_step(), InputError);
}

TEST(WarmStart, TorquesStayWithinTwiceTheLimit) {
  const BoundingConfig cfg;
  const rbd::RobotModel model;
  const auto bp = build_bounding_problem(1, model, cfg);
  std::mt19937 rng(10);
  for (int i = 0; i < 200; ++i) {
    rbd::State x = bp.x0;
    x.q += testing::random_vector(rng, 7, -0.5, 0.5);
    x.v += testing::random_vector(rng, 7, -5.0, 5.0);
    for (int mode = 0; mode < 4; ++mode) {
      const Vector u = bp.policy->control(mode, x);
      EXPECT_TRUE(u.allFinite());
      EXPECT_LE(u.cwiseAbs().maxCoeff(), 2.0 * model.torque_limit() + 1e-12);
    }
  }
  // The spring pushes, never pulls.
  rbd::State stretched = bp.x0;
  stretched.q(rbd::kBodyZ) += 0.3;
  EXPECT_GE(bp.policy->slip_force(stretched, rbd::Foot::kBack)(1), 0.0);
}

TEST(WarmStart, ProducesAFeasibleOneCycleRollout) {
  const BoundingConfig cfg;
  const auto bp = build_bounding_problem(1, rbd::RobotModel{}, cfg);
  const auto disc = bp.fixed_step();
  const ControlSequence u = warm_start(*disc, *bp.policy, bp.x0.stacked());
  ASSERT_EQ(u.size(), 296u);
  const Trajectory t = hybrid::rollout(*disc, u, bp.x0.stacked());
  for (const auto &p : t.phases) {
    for (const auto &x : p.states) EXPECT_GT(x(rbd::kBodyZ), 0.15);
  }
}

}  // namespace
}  // namespace hsddp::bounding
