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
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/hybrid/residuals.hpp"
#include "hsddp/hybrid/robot_system.hpp"
#include "hsddp/hybrid/rollout.hpp"
#include "test_problems.hpp"

namespace hsddp::hybrid {
namespace {

using rbd::Foot;
using testing::numeric_jacobian;
using testing::relative_error;

ModeSchedule one_cycle() { return ModeSchedule::bounding(1, 0.080, 0.072, 0.072); }

std::shared_ptr<RobotHybridSystem> robot_system(const ModeSchedule &s) {
  return std::make_shared<RobotHybridSystem>(rbd::RobotModel{}, s.modes());
}

rbd::State stance_state() {
  return bounding::initial_state(rbd::RobotModel{}, bounding::BoundingConfig{});
}

TEST(ModeSchedule, BoundingCycleStructure) {
  const ModeSchedule s = ModeSchedule::bounding(2, 0.080, 0.072, 0.072);
  ASSERT_EQ(s.num_modes(), 8);
  EXPECT_EQ(s.mode(0).kind, ModeKind::kBackStance);
  EXPECT_EQ(s.mode(1).kind, ModeKind::kFlight1);
  EXPECT_EQ(s.mode(2).kind, ModeKind::kFrontStance);
  EXPECT_EQ(s.mode(3).kind, ModeKind::kFlight2);
  EXPECT_EQ(s.mode(1).touchdown_foot, Foot::kFront);
  EXPECT_EQ(s.mode(3).touchdown_foot, Foot::kBack);
  EXPECT_TRUE(s.mode(1).has_impact_at_exit);
  EXPECT_FALSE(s.mode(0).has_impact_at_exit);
  EXPECT_EQ(s.touchdown_indices(), (std::vector<int>{1, 3, 5, 7}));
  EXPECT_NEAR(one_cycle().total_time(), 0.296, 1e-15);
  EXPECT_EQ(one_cycle().knot_counts(0.001), (std::vector<int>{80, 72, 72, 72}));
  const auto t = one_cycle().switching_times();
  EXPECT_NEAR(t.back(), 0.296, 1e-15);
  EXPECT_NEAR(t.front(), 0.080, 1e-15);
}

TEST(ModeSchedule, RejectsBadInput) {
  EXPECT_THROW(one_cycle().knot_counts(0.0007), InputError);
  EXPECT_THROW(ModeSchedule({ModeKind::kBackStance}, {0.1, 0.2}), InputError);
  EXPECT_THROW(ModeSchedule({ModeKind::kBackStance}, {-0.1}), InputError);
  EXPECT_THROW(ModeSchedule({ModeKind::kFlight1, ModeKind::kBackStance}, {0.1, 0.1}),
               InputError);
  EXPECT_THROW(mode_kind_from_string("gallop"), InputError);
  EXPECT_EQ(mode_kind_from_string(to_string(ModeKind::kFlight2)), ModeKind::kFlight2);
  const auto s = one_cycle().with_durations({0.1, 0.1, 0.1, 0.1});
  EXPECT_NEAR(s.total_time(), 0.4, 1e-15);
}

TEST(RobotSystem, ConstraintCountsAndGap) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  EXPECT_EQ(sys->num_inequalities(0), 11);
  EXPECT_EQ(sys->num_inequalities(1), 8);
  EXPECT_TRUE(sys->has_switching_constraint(1));
  EXPECT_FALSE(sys->has_switching_constraint(0));
  EXPECT_TRUE(sys->has_reset(1));
  EXPECT_FALSE(sys->has_reset(0));
  const rbd::State x = stance_state();
  EXPECT_NEAR(sys->switching_gap(1, x.stacked()),
              rbd::gap(sys->model(), x.q, Foot::kFront), 1e-15);
  Vector g;
  Matrix gh;
  sys->switching_gap_derivatives(3, x.stacked(), g, gh);
  const Matrix num = numeric_jacobian(
      [&](const Vector &s2) -> Vector {
        return Vector::Constant(1, sys->switching_gap(3, s2));
      },
      x.stacked());
  EXPECT_LT(relative_error(g.transpose(), num), 1e-8);
}

TEST(RobotSystem, InequalityJacobiansMatchDifferences) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  std::mt19937 rng(2);
  const rbd::State x0 = stance_state();
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = x0.stacked() + testing::random_vector(rng, 14, -0.05, 0.05);
    const Vector u = testing::random_vector(rng, 4, -10, 10);
    for (int mode : {0, 1, 2}) {
      Vector aux;
      sys->flow(mode, x, u, &aux);
      FlowJacobians fj;
      sys->flow_jacobians(mode, x, u, fj);
      Matrix cx, cu;
      sys->inequality_jacobians(mode, x, u, aux, fj, cx, cu);
      auto margins = [&](const Vector &xx, const Vector &uu) {
        Vector a, c;
        sys->flow(mode, xx, uu, &a);
        sys->inequalities(mode, xx, uu, a, c);
        return c;
      };
      EXPECT_LT(relative_error(cx, numeric_jacobian(
                                       [&](const Vector &v) -> Vector { return margins(v, u); }, x)),
                1e-6);
      EXPECT_LT(relative_error(cu, numeric_jacobian(
                                       [&](const Vector &v) -> Vector { return margins(x, v); }, u)),
                1e-6);
      // Flow Jacobians themselves.
      EXPECT_LT(relative_error(fj.dfdx, numeric_jacobian(
                                            [&](const Vector &v) -> Vector {
                                              return sys->flow(mode, v, u, nullptr);
                                            },
                                            x)),
                1e-6);
    }
  }
}

TEST(Discretization, FixedStepMatchesEulerStep) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const FixedStepDiscretization disc(sys, s, 0.001);
  EXPECT_EQ(disc.total_knots(), 296);
  EXPECT_EQ(disc.knots(0), 80);
  const rbd::State x = stance_state();
  const Vector u = Vector::Constant(4, 1.0);
  Vector aux;
  const Vector next = disc.step(0, x.stacked(), u, &aux);
  const rbd::State ref =
      rbd::integrate_step(sys->model(), x, u, s.mode(0).contacts, 0.001);
  EXPECT_LT((next - ref.stacked()).norm(), 1e-14);
  EXPECT_EQ(aux.size(), 2);
  EXPECT_THROW(FixedStepDiscretization(sys, {10, 10}, 0.001), InputError);
}

TEST(Discretization, TimeScaledStepHoldsDurationsAndMatchesFixedStep) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const TimeScaledDiscretization disc(sys, 40);
  const FixedStepDiscretization fixed(sys, {40, 40, 40, 40}, 0.002);
  const rbd::State x = stance_state();
  const Vector z = Eigen::Vector4d(0.08, 0.08, 0.08, 0.08);
  const Vector xa = disc.augment(x.stacked(), z);
  const Vector u = Vector::Constant(4, -2.0);
  const Vector next = disc.step(0, xa, u, nullptr);
  EXPECT_LT((next.head(14) - fixed.step(0, x.stacked(), u, nullptr)).norm(), 1e-14);
  EXPECT_EQ(next.tail(4), z);
  EXPECT_DOUBLE_EQ(disc.knot_duration(2, xa), 0.002);
  EXPECT_THROW(disc.augment(x.stacked(), Eigen::Vector4d(0.1, 0.0, 0.1, 0.1)), InputError);
  Vector bad = xa;
  bad(14) = -0.1;
  EXPECT_THROW(disc.step(0, bad, u, nullptr), InputError);
}

TEST(Discretization, StepAndResetJacobiansMatchDifferences) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const TimeScaledDiscretization scaled(sys, 40);
  const FixedStepDiscretization fixed(sys, s, 0.001);
  std::mt19937 rng(4);
  const rbd::State x0 = stance_state();
  for (int trial = 0; trial < 25; ++trial) {
    const Vector x = x0.stacked() + testing::random_vector(rng, 14, -0.05, 0.05);
    const Vector z = testing::random_vector(rng, 4, 0.05, 0.1);
    const Vector xa = scaled.augment(x, z);
    const Vector u = testing::random_vector(rng, 4, -10, 10);
    for (int mode = 0; mode < 4; ++mode) {
      for (const Discretization *d : {static_cast<const Discretization *>(&scaled),
                                      static_cast<const Discretization *>(&fixed)}) {
        const Vector xx = d == &scaled ? xa : x;
        Matrix fx, fu;
        d->step_jacobians(mode, xx, u, fx, fu, nullptr);
        EXPECT_LT(relative_error(fx, numeric_jacobian(
                                         [&](const Vector &v) -> Vector {
                                           return d->step(mode, v, u, nullptr);
                                         },
                                         xx)),
                  1e-6);
        EXPECT_LT(relative_error(fu, numeric_jacobian(
                                         [&](const Vector &v) -> Vector {
                                           return d->step(mode, xx, v, nullptr);
                                         },
                                         u)),
                  1e-6);
        EXPECT_LT(relative_error(d->reset_jacobian(mode, xx),
                                 numeric_jacobian(
                                     [&](const Vector &v) -> Vector {
                                       return d->reset(mode, v, nullptr);
                                     },
                                     xx)),
                  1e-6);
      }
    }
  }
}

TEST(Rollout, ConcatenatingPhasesReproducesTheFullRollout) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const auto disc = std::make_shared<FixedStepDiscretization>(sys, s, 0.001);
  const rbd::State x0 = stance_state();
  bounding::BoundingConfig cfg;
  const auto bp = bounding::build_bounding_problem(1, sys->model(), cfg);
  const ControlSequence u = bounding::warm_start(*disc, *bp.policy, x0.stacked());
  const Trajectory full = rollout(*disc, u, x0.stacked());
  ASSERT_EQ(full.phases.size(), 4u);
  EXPECT_EQ(full.total_knots(), 296);

  Vector x = x0.stacked();
  int idx = 0;
  for (int i = 0; i < 4; ++i) {
    // A one-phase problem for mode i alone.
    const auto single = std::make_shared<RobotHybridSystem>(
        sys->model(), std::vector<Mode>{s.mode(i)});
    const FixedStepDiscretization d1(single, {disc->knots(i)}, 0.001);
    const ControlSequence part(u.begin() + idx, u.begin() + idx + disc->knots(i));
    idx += disc->knots(i);
    const Trajectory t = rollout(d1, part, x);
    EXPECT_EQ(t.phases[0].states.back(), full.phases[i].states.back());
    x = t.phases[0].states.back();
    if (i + 1 < 4) x = disc->reset(i, x, nullptr);
    if (i + 1 < 4) {
      EXPECT_EQ(x, full.phases[i + 1].states.front());
    }
  }
  EXPECT_TRUE(full.phases[1].impulse.size() > 0);
  EXPECT_EQ(full.phases[0].impulse.size(), 0);
  EXPECT_EQ(full.phases[3].impulse.size(), 0);  // no reset after the last mode

  const Trajectory robot = rollout(sys->model(), s, u, x0, 0.001);
  EXPECT_EQ(robot.final_state(), full.final_state());
}

TEST(Rollout, TimeScaledRobotRolloutMatchesDiscretization) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const TimeScaledDiscretization disc(sys, 20);
  const rbd::State x0 = stance_state();
  const AugmentedState xa{x0, Eigen::Vector4d(0.08, 0.07, 0.07, 0.07)};
  const ControlSequence u(80, Vector::Zero(4));
  const Trajectory a = rollout_scaled(sys->model(), s, u, xa, 20);
  const Trajectory b = rollout(disc, u, xa.stacked());
  EXPECT_EQ(a.final_state(), b.final_state());
}

TEST(Rollout, ValidatesInputs) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const FixedStepDiscretization disc(sys, s, 0.001);
  const Vector x0 = stance_state().stacked();
  EXPECT_THROW(rollout(disc, ControlSequence(10, Vector::Zero(4)), x0), InputError);
  Vector bad = x0;
  bad(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(rollout(disc, ControlSequence(296, Vector::Zero(4)), bad), InputError);
  ControlSequence huge(296, Vector::Zero(4));
  huge[5](0) = std::numeric_limits<double>::infinity();
  try {
    rollout(disc, huge, x0);
    FAIL() << "expected a rollout failure";
  } catch (const RolloutError &e) {
    EXPECT_EQ(e.phase(), 0);
  } catch (const InputError &) {
  }
}

TEST(Residuals, SwitchingAndInequalityResiduals) {
  const auto s = one_cycle();
  const auto sys = robot_system(s);
  const FixedStepDiscretization disc(sys, s, 0.001);
  const rbd::State x0 = stance_state();
  const Trajectory t = rollout(disc, ControlSequence(296, Vector::Zero(4)), x0.stacked());
  const auto g = switching_residuals(*sys, t);
  ASSERT_EQ(g.residuals.size(), 2u);
  EXPECT_EQ(g.residuals[0].mode, 1);
  EXPECT_EQ(g.residuals[0].foot, Foot::kFront);
  EXPECT_NEAR(g.residuals[0].value,
              rbd::gap(sys->model(), rbd::State::from_stacked(t.phases[1].states.back()).q,
                       Foot::kFront),
              1e-15);
  EXPECT_NEAR(g.sum_squares(),
              g.residuals[0].value * g.residuals[0].value +
                  g.residuals[1].value * g.residuals[1].value,
              1e-15);
  const auto c = inequality_residuals(*sys, t);
  EXPECT_EQ(c.size(), 296u);
  EXPECT_EQ(c[0].margins.size(), 11);
  // Zero torques leave the full torque margin.
  EXPECT_NEAR(c[100].margins.head(8).minCoeff(), 17.0, 1e-12);
  EXPECT_EQ(min_margin({}), std::numeric_limits<double>::infinity());
  EXPECT_THROW(switching_residuals(*sys, Trajectory{}), InputError);
  const auto g2 = switching_residuals(sys->model(), t, s);
  EXPECT_EQ(g2.sum_squares(), g.sum_squares());
}

}  // namespace
}  // namespace hsddp::hybrid
