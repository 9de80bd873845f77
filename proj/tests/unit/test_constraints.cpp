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
#include <sstream>

#include <gtest/gtest.h>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/constraints/augmented_lagrangian.hpp"
#include "hsddp/constraints/augmented_problem.hpp"
#include "hsddp/constraints/outer_loop.hpp"
#include "hsddp/constraints/relaxed_barrier.hpp"
#include "hsddp/hybrid/residuals.hpp"
#include "test_problems.hpp"

namespace hsddp::constraints {
namespace {

using testing::numeric_gradient;
using testing::numeric_jacobian;
using testing::relative_error;

// Direct evaluation of the relaxed barrier, independent of the library.
double reb_reference(double z, double delta, int k) {
  if (z > delta) return -std::log(z);
  const double base = (z - k * delta) / ((k - 1) * delta);
  return (k - 1.0) / k * (std::pow(base, k) - 1.0) - std::log(delta);
}

TEST(RelaxedBarrier, ValueAtZero) {
  EXPECT_NEAR(reb_value(0.0, 0.5, 2), 1.5 + std::log(2.0), 1e-15);
  EXPECT_NEAR(reb_value(0.0, 0.5, 2), 2.1931471805599454, 1e-12);
}

TEST(RelaxedBarrier, BranchesJoinSmoothly) {
  for (double delta : {0.5, 0.1, 0.01}) {
    for (int k : {2, 4}) {
      const double lo = std::nextafter(delta, 0.0);
      const double hi = std::nextafter(delta, 1.0);
      EXPECT_NEAR(reb_value(lo, delta, k), -std::log(delta), 1e-12);
      EXPECT_NEAR(reb_value(hi, delta, k), -std::log(delta), 1e-12);
      EXPECT_NEAR(reb_grad(lo, delta, k), -1.0 / delta, 1e-12 / delta);
      EXPECT_NEAR(reb_grad(hi, delta, k), -1.0 / delta, 1e-12 / delta);
      EXPECT_NEAR(reb_hess(lo, delta, k), 1.0 / (delta * delta), 1e-9 / (delta * delta));
    }
  }
}

TEST(RelaxedBarrier, DerivativesAndConvexity) {
  for (int k : {2, 4, 6}) {
    for (double z = -2.0; z <= 2.0; z += 0.01) {
      const double delta = 0.3;
      EXPECT_NEAR(reb_value(z, delta, k), reb_reference(z, delta, k), 1e-12);
      const double h = 1e-6;
      const double g = (reb_value(z + h, delta, k) - reb_value(z - h, delta, k)) / (2 * h);
      EXPECT_NEAR(reb_grad(z, delta, k), g, 1e-5 * std::max(1.0, std::abs(g)));
      const double hh = (reb_grad(z + h, delta, k) - reb_grad(z - h, delta, k)) / (2 * h);
      if (std::abs(z - delta) > 2 * h) {
        EXPECT_NEAR(reb_hess(z, delta, k), hh, 1e-5 * std::max(1.0, std::abs(hh)));
      }
      EXPECT_GE(reb_hess(z, delta, k), 0.0);
      // Convex: the secant lies above the function.
      const double a = z - 0.05, b = z + 0.05;
      EXPECT_LE(reb_value(z, delta, k),
                0.5 * (reb_value(a, delta, k) + reb_value(b, delta, k)) + 1e-12);
    }
  }
}

TEST(RelaxedBarrier, StateValidation) {
  ReBState s;
  EXPECT_NO_THROW(s.validate());
  s.order = 3;
  EXPECT_THROW(s.validate(), InputError);
  s = ReBState{};
  s.delta = 0.0;
  EXPECT_THROW(s.validate(), InputError);
  s = ReBState{};
  EXPECT_NEAR(s.decayed().delta, 0.1, 1e-15);
}

TEST(AugmentedLagrangian, PenaltyFormsAndUpdate) {
  const PenaltyScalar a = penalty(0.2, 4.0, 1.5, PenaltyForm::kSquaredHalf);
  EXPECT_NEAR(a.value, 4.0 * 0.04 + 0.3, 1e-15);
  EXPECT_NEAR(a.d1, 8.0 * 0.2 + 1.5, 1e-15);
  EXPECT_NEAR(a.d2, 8.0, 1e-15);
  const PenaltyScalar b = penalty(0.2, 4.0, 1.5, PenaltyForm::kHalf);
  EXPECT_NEAR(b.value, 2.0 * 0.04 + 0.3, 1e-15);
  EXPECT_NEAR(b.d1, 4.0 * 0.2 + 1.5, 1e-15);

  const testing::DoubleIntegrator sys(3, {0, 2}, 1.0);
  ALState al = ALState::initial(sys, 5.0, 8.0, 1e-4, PenaltyForm::kSquaredHalf);
  EXPECT_EQ(al.modes, (std::vector<int>{0, 2}));
  EXPECT_EQ(al.lambda, (std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(al.multiplier(1), InputError);
  hybrid::SwitchingConstraintSet g;
  g.residuals = {{0, std::nullopt, 0.1}, {2, std::nullopt, -0.2}};
  const ALState next = al_update(al, g);
  EXPECT_NEAR(next.sigma, 40.0, 1e-15);
  EXPECT_NEAR(next.multiplier(0), 0.5, 1e-15);
  EXPECT_NEAR(next.multiplier(2), -1.0, 1e-15);
  EXPECT_NEAR(next.max_abs_multiplier(), 1.0, 1e-15);
  EXPECT_NEAR(next.effective_multiplier(0, 0.01),
              penalty(0.01, 40.0, 0.5, PenaltyForm::kSquaredHalf).d1, 1e-15);
}

struct RobotFixture {
  RobotFixture()
      : cfg(),
        bp(bounding::build_bounding_problem(1, rbd::RobotModel{}, cfg)),
        fixed(bp.fixed_step()),
        scaled(bp.time_scaled()) {}
  bounding::BoundingConfig cfg;
  bounding::BoundingProblem bp;
  std::shared_ptr<const hybrid::FixedStepDiscretization> fixed;
  std::shared_ptr<const hybrid::TimeScaledDiscretization> scaled;
};

ALState some_multipliers(const hybrid::HybridSystem &sys) {
  ALState al = ALState::initial(sys, 5.0, 8.0, 1e-4, PenaltyForm::kSquaredHalf);
  for (size_t i = 0; i < al.lambda.size(); ++i) al.lambda[i] = 0.7 * (i + 1.0);
  return al;
}

// Gradients and exact Hessians of the augmented cost against differences, on
// random points of the fixed-step and time-scaled problems.
TEST(AugmentedCostModel, RunningExpansionMatchesDifferences) {
  RobotFixture f;
  std::mt19937 rng(12);
  ReBState reb;
  reb.delta = 0.5;
  int points = 0;
  for (const hybrid::Discretization *d :
       {static_cast<const hybrid::Discretization *>(f.fixed.get()),
        static_cast<const hybrid::Discretization *>(f.scaled.get())}) {
    const auto disc = d == f.fixed.get()
                          ? std::static_pointer_cast<const hybrid::Discretization>(f.fixed)
                          : std::static_pointer_cast<const hybrid::Discretization>(f.scaled);
    const AugmentedCostModel model(disc, f.bp.cost, some_multipliers(*f.bp.system), reb,
                                   HessianMode::kExact);
    for (int trial = 0; trial < 13; ++trial) {
      for (int phase = 0; phase < 4; ++phase, ++points) {
        Vector x = f.bp.x0.stacked() + testing::random_vector(rng, 14, -0.05, 0.05);
        if (d == f.scaled.get()) {
          x = f.scaled->augment(x, testing::random_vector(rng, 4, 0.05, 0.1));
        }
        const Vector u = testing::random_vector(rng, 4, -20, 20);
        const int nx = static_cast<int>(x.size());
        auto value = [&](const Vector &w) {
          Vector aux;
          const Vector xx = w.head(nx), uu = w.tail(4);
          d->step(phase, xx, uu, &aux);
          return model.running(phase, xx, uu, aux);
        };
        auto expansion = [&](const Vector &w) {
          const Vector xx = w.head(nx), uu = w.tail(4);
          Vector aux;
          d->step(phase, xx, uu, &aux);
          Matrix fx, fu;
          hybrid::FlowJacobians flow;
          d->step_jacobians(phase, xx, uu, fx, fu, &flow);
          RunningExpansion e;
          model.running_expansion(phase, xx, uu, aux, flow, e);
          return e;
        };
        Vector w(nx + 4);
        w << x, u;
        const RunningExpansion e = expansion(w);
        EXPECT_NEAR(e.value, value(w), 1e-12 * std::max(1.0, std::abs(e.value)));
        Vector grad(nx + 4);
        grad << e.lx, e.lu;
        EXPECT_LT(relative_error(grad, numeric_gradient(value, w)), 1e-4);
        Matrix hess(nx + 4, nx + 4);
        hess << e.lxx, e.lux.transpose(), e.lux, e.luu;
        const Matrix num = numeric_jacobian(
            [&](const Vector &v) -> Vector {
              const RunningExpansion ev = expansion(v);
              Vector g(nx + 4);
              g << ev.lx, ev.lu;
              return g;
            },
            w);
        EXPECT_LT(relative_error(hess, num), 1e-4) << "phase " << phase;
      }
    }
  }
  EXPECT_GE(points, 100);
}

TEST(AugmentedCostModel, TerminalExpansionMatchesDifferences) {
  RobotFixture f;
  std::mt19937 rng(14);
  const auto disc = std::static_pointer_cast<const hybrid::Discretization>(f.scaled);
  const AugmentedCostModel model(disc, f.bp.cost, some_multipliers(*f.bp.system),
                                 std::nullopt, HessianMode::kExact);
  for (int trial = 0; trial < 30; ++trial) {
    for (int phase = 0; phase < 4; ++phase) {
      const Vector x = f.scaled->augment(
          f.bp.x0.stacked() + testing::random_vector(rng, 14, -0.1, 0.1),
          testing::random_vector(rng, 4, 0.05, 0.1));
      TerminalExpansion e;
      model.terminal_expansion(phase, x, e);
      auto value = [&](const Vector &v) { return model.terminal(phase, v); };
      EXPECT_NEAR(e.value, value(x), 1e-12 * std::max(1.0, e.value));
      EXPECT_LT(relative_error(e.phix, numeric_gradient(value, x)), 1e-4);
      const Matrix num = numeric_jacobian(
          [&](const Vector &v) -> Vector {
            TerminalExpansion ev;
            model.terminal_expansion(phase, v, ev);
            return ev.phix;
          },
          x);
      EXPECT_LT(relative_error(e.phixx, num), 1e-4);
    }
  }
}

TEST(AugmentedCostModel, GaussNewtonDropsOnlyCurvatureTerms) {
  RobotFixture f;
  const auto disc = std::static_pointer_cast<const hybrid::Discretization>(f.fixed);
  const AugmentedCostModel exact(disc, f.bp.cost, some_multipliers(*f.bp.system),
                                 ReBState{}, HessianMode::kExact);
  const AugmentedCostModel gn(disc, f.bp.cost, some_multipliers(*f.bp.system),
                              ReBState{}, HessianMode::kGaussNewton);
  const Vector x = f.bp.x0.stacked();
  const Vector u = Vector::Constant(4, 3.0);
  Vector aux;
  disc->step(0, x, u, &aux);
  Matrix fx, fu;
  hybrid::FlowJacobians flow;
  disc->step_jacobians(0, x, u, fx, fu, &flow);
  RunningExpansion a, b;
  exact.running_expansion(0, x, u, aux, flow, a);
  gn.running_expansion(0, x, u, aux, flow, b);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.lx, b.lx);
  EXPECT_EQ(a.lu, b.lu);
  EXPECT_GT(b.luu.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff(), 0.0);
}

TEST(AugmentedCostModel, BreakdownSplitsTheCost) {
  RobotFixture f;
  const auto disc = std::static_pointer_cast<const hybrid::Discretization>(f.fixed);
  const ConstrainedHybridProblem problem(disc, f.bp.cost, some_multipliers(*f.bp.system),
                                         ReBState{});
  const ControlSequence u = bounding::warm_start(*disc, *f.bp.policy, f.bp.x0.stacked());
  const auto e = ddp::evaluate(problem, u, f.bp.x0.stacked());
  const CostBreakdown b = problem.cost_model().breakdown(e.traj);
  EXPECT_NEAR(b.total(), e.cost, 1e-9 * std::abs(e.cost));
  EXPECT_NEAR(b.base, bounding::eval_cost(e.traj, *f.bp.cost, f.bp.schedule, 0.001),
              1e-9 * b.base);
  const ALTerms terms = al_terms(*f.bp.system, e.traj, some_multipliers(*f.bp.system));
  EXPECT_NEAR(b.penalty, terms.value, 1e-12);
  EXPECT_GT(b.barrier, 0.0);
}

// A small equality-constrained QP through the outer loop, against the KKT
// multiplier of its direct transcription.
TEST(OuterLoop, MultiplierMatchesKktOfTranscribedQp) {
  const auto sys = std::make_shared<testing::DoubleIntegrator>(2, std::vector<int>{0}, 1.0);
  const auto disc = std::make_shared<hybrid::FixedStepDiscretization>(
      sys, std::vector<int>{10, 10}, 0.1);
  std::vector<testing::QuadraticModeCost> mc(2);
  mc[0].w = Eigen::Vector2d(1.0, 0.5);
  mc[1].w = Eigen::Vector2d(1.0, 0.5);
  mc[1].wf = Eigen::Vector2d(10.0, 10.0);
  const auto cost = std::make_shared<testing::QuadraticCost>(mc);
  const Vector x0 = Eigen::Vector2d(0.0, 0.0);

  const auto s = testing::stack_linear(testing::DoubleIntegrator::a(),
                                       testing::DoubleIntegrator::b(), {10, 10},
                                       {0.1, 0.1}, x0);
  const Matrix c = s.m[10].row(0);
  const Vector d = Vector::Constant(1, 1.0 - s.offset[10](0));
  const auto qp = testing::solve_transcribed_qp(s, mc, 1, c, d);

  OuterLoopOptions o;
  o.use_reb = false;
  o.al_tolerance = 1e-14;
  o.max_al_iterations = 20;
  const auto r = outer_loop(disc, cost, ControlSequence(20, Vector::Zero(1)), x0, o);
  EXPECT_TRUE(r.report.converged);
  const double g = hybrid::switching_residuals(*sys, r.solution.traj).residuals[0].value;
  EXPECT_NEAR(r.al.effective_multiplier(0, g), qp.multipliers(0), 1e-4);
  // The cost differs from the QP optimum to first order in the leftover residual.
  EXPECT_NEAR(r.base_cost, qp.cost, 2.0 * std::abs(qp.multipliers(0) * g) + 1e-9);
}

TEST(OuterLoop, WithoutConstraintsItIsOneDdpSolve) {
  RobotFixture f;
  OuterLoopOptions o;
  o.use_al = false;
  o.use_reb = false;
  o.ddp.max_iterations = 5;
  const ControlSequence u = bounding::warm_start(*f.fixed, *f.bp.policy, f.bp.x0.stacked());
  const auto r = outer_loop(f.fixed, f.bp.cost, u, f.bp.x0.stacked(), o);
  const ConstrainedHybridProblem plain(f.fixed, f.bp.cost, std::nullopt, std::nullopt);
  const auto s = ddp::solve(plain, u, f.bp.x0.stacked(), o.ddp);
  EXPECT_EQ(r.solution.cost, s.cost);
  EXPECT_EQ(r.report.al_iterations.size(), 1u);
  EXPECT_EQ(r.report.converged, s.report.converged);
  std::ostringstream al, ddp_log;
  write_al_csv(al, r.report);
  write_ddp_csv(ddp_log, r.report);
  EXPECT_EQ(al.str().substr(0, 4), "eta,");
  EXPECT_NE(ddp_log.str().find("base_cost"), std::string::npos);
}

}  // namespace
}  // namespace hsddp::constraints
