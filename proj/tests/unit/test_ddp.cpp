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

#include "hsddp/ddp/expansion.hpp"
#include "hsddp/ddp/solver.hpp"
#include "test_problems.hpp"

namespace hsddp::ddp {
namespace {

using testing::LqPhase;
using testing::LqProblem;

// Pendulum swing-up, x = [angle, rate], forward Euler.
class Pendulum : public OptimalControlProblem {
 public:
  int state_dim() const override { return 2; }
  int control_dim() const override { return 1; }
  int num_phases() const override { return 1; }
  int knots(int) const override { return 60; }
  Vector step(int, const Vector &x, const Vector &u, Vector *aux) const override {
    if (aux) aux->resize(0);
    return Eigen::Vector2d(x(0) + h * x(1), x(1) + h * (-std::sin(x(0)) + u(0)));
  }
  Vector reset(int, const Vector &x, Vector *) const override { return x; }
  Matrix reset_jacobian(int, const Vector &) const override {
    return Matrix::Identity(2, 2);
  }
  double running_cost(int, const Vector &x, const Vector &u, const Vector &) const override {
    return h * (0.05 * x(1) * x(1) + 0.5 * u(0) * u(0));
  }
  double terminal_cost(int, const Vector &x) const override {
    return 50.0 * ((x(0) - M_PI) * (x(0) - M_PI) + x(1) * x(1));
  }
  void knot_model(int phase, const Vector &x, const Vector &u, const Vector &aux,
                  KnotModel &out) const override {
    out.fx = (Matrix(2, 2) << 1, h, -h * std::cos(x(0)), 1).finished();
    out.fu = (Matrix(2, 1) << 0, h).finished();
    out.cost.set_zero(2, 1);
    out.cost.value = running_cost(phase, x, u, aux);
    out.cost.lx(1) = 0.1 * h * x(1);
    out.cost.lxx(1, 1) = 0.1 * h;
    out.cost.lu(0) = h * u(0);
    out.cost.luu(0, 0) = h;
  }
  void terminal_expansion(int phase, const Vector &x,
                          TerminalExpansion &out) const override {
    out.set_zero(2);
    out.value = terminal_cost(phase, x);
    out.phix << 100.0 * (x(0) - M_PI), 100.0 * x(1);
    out.phixx = 100.0 * Matrix::Identity(2, 2);
  }
  double h = 0.05;
};

TEST(Expansion, QExpansionMatchesDefinition) {
  std::mt19937 rng(1);
  RunningExpansion c;
  c.set_zero(3, 2);
  c.lx = testing::random_vector(rng, 3, -1, 1);
  c.lu = testing::random_vector(rng, 2, -1, 1);
  c.lxx = Matrix::Identity(3, 3);
  c.luu = 2.0 * Matrix::Identity(2, 2);
  c.lux = testing::random_matrix(rng, 2, 3, 0.1);
  const Matrix fx = testing::random_matrix(rng, 3, 3, 1.0);
  const Matrix fu = testing::random_matrix(rng, 3, 2, 1.0);
  ValueExpansion next;
  next.vx = testing::random_vector(rng, 3, -1, 1);
  next.vxx = Matrix::Identity(3, 3) * 3.0;
  const QExpansion q = q_expansion(c, fx, fu, next, 0.25);
  EXPECT_LT((q.qx - (c.lx + fx.transpose() * next.vx)).norm(), 1e-14);
  EXPECT_LT((q.qu - (c.lu + fu.transpose() * next.vx)).norm(), 1e-14);
  EXPECT_LT((q.quu - (c.luu + fu.transpose() * next.vxx * fu)).norm(), 1e-13);
  EXPECT_LT((q.qux - (c.lux + fu.transpose() * next.vxx * fx)).norm(), 1e-13);
  EXPECT_LT((q.qxx - (c.lxx + fx.transpose() * next.vxx * fx)).norm(), 1e-13);
  EXPECT_EQ(q.reg, 0.25);

  const auto upd = policy_and_value_update(q, next);
  ASSERT_TRUE(upd.has_value());
  const Matrix quu_reg = q.quu + 0.25 * Matrix::Identity(2, 2);
  const Vector kappa = -quu_reg.ldlt().solve(q.qu);
  const Matrix k = -quu_reg.ldlt().solve(q.qux);
  EXPECT_LT((upd->policy.kappa - kappa).norm(), 1e-12);
  EXPECT_LT((upd->policy.gain - k).norm(), 1e-12);
  EXPECT_NEAR(upd->value.dv1, kappa.dot(q.qu), 1e-12);
  EXPECT_NEAR(upd->value.dv2, kappa.dot(q.quu * kappa), 1e-12);
  const Vector vx = q.qx + k.transpose() * q.quu * kappa + k.transpose() * q.qu +
                    q.qux.transpose() * kappa;
  EXPECT_LT((upd->value.vx - vx).norm(), 1e-12);
}

TEST(Expansion, IndefiniteQuuIsRejected) {
  QExpansion q;
  q.qx = Vector::Zero(1);
  q.qu = Vector::Ones(1);
  q.qxx = Matrix::Identity(1, 1);
  q.quu = -Matrix::Identity(1, 1);
  q.qux = Matrix::Zero(1, 1);
  ValueExpansion next;
  next.vx = Vector::Zero(1);
  next.vxx = Matrix::Zero(1, 1);
  EXPECT_FALSE(policy_and_value_update(q, next).has_value());
  q.reg = 2.0;
  EXPECT_TRUE(policy_and_value_update(q, next).has_value());
}

TEST(Expansion, ImpactValueUpdateComposesThroughTheReset) {
  std::mt19937 rng(3);
  ValueExpansion post;
  post.vx = testing::random_vector(rng, 3, -1, 1);
  post.vxx = Matrix::Identity(3, 3);
  post.dv1 = -2.0;
  post.dv2 = 1.0;
  const Matrix p = testing::random_matrix(rng, 3, 3, 1.0);
  TerminalExpansion phi;
  phi.set_zero(3);
  phi.phix = Vector::Ones(3);
  phi.phixx = 2.0 * Matrix::Identity(3, 3);
  const ValueExpansion pre = impact_value_update(post, p, phi);
  EXPECT_LT((pre.vx - (phi.phix + p.transpose() * post.vx)).norm(), 1e-14);
  EXPECT_LT((pre.vxx - (phi.phixx + p.transpose() * post.vxx * p)).norm(), 1e-13);
  EXPECT_EQ(pre.dv1, post.dv1);
  EXPECT_EQ(pre.dv2, post.dv2);
}

TEST(Lqr, MatchesDiscreteRiccatiSolution) {
  std::mt19937 rng(42);
  const LqPhase ph = testing::random_lq_phase(rng, 3, 1, 50);
  const LqProblem problem({ph});
  const Vector x0 = testing::random_vector(rng, 3, -1, 1);
  const auto oracle = testing::riccati_oracle({ph}, x0);
  const Solution sol = solve(problem, ControlSequence(50, Vector::Zero(1)), x0);
  EXPECT_TRUE(sol.report.converged);
  EXPECT_LE(static_cast<int>(sol.report.iterations.size()), 2);
  EXPECT_NEAR(sol.cost, oracle.cost, 1e-10 * std::max(1.0, oracle.cost));
  ASSERT_EQ(sol.policy.knots(), 50);
  for (int k = 0; k < 50; ++k) {
    EXPECT_LT((sol.policy.gain[k] - oracle.gains[k]).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Lqr, TwoPhaseLinearResetMatchesComposedRiccati) {
  std::mt19937 rng(7);
  LqPhase a = testing::random_lq_phase(rng, 3, 2, 25);
  LqPhase b = testing::random_lq_phase(rng, 3, 2, 30);
  a.reset = Matrix::Identity(3, 3) + testing::random_matrix(rng, 3, 3, 0.3);
  const LqProblem problem({a, b});
  const Vector x0 = testing::random_vector(rng, 3, -1, 1);
  const auto oracle = testing::riccati_oracle({a, b}, x0);
  const Solution sol = solve(problem, ControlSequence(55, Vector::Zero(2)), x0);
  EXPECT_TRUE(sol.report.converged);
  EXPECT_NEAR(sol.cost, oracle.cost, 1e-8 * std::max(1.0, oracle.cost));
  for (int k = 0; k < 55; ++k) {
    EXPECT_LT((sol.policy.gain[k] - oracle.gains[k]).cwiseAbs().maxCoeff(), 1e-8);
  }
  // The optimal controls follow the composed feedback law.
  Vector x = x0;
  int k = 0;
  for (int i = 0; i < 2; ++i) {
    const auto &ph = problem.phases()[i];
    for (int j = 0; j < ph.knots; ++j, ++k) {
      const Vector u = oracle.gains[k] * x;
      EXPECT_LT((sol.traj.phases[i].controls[j] - u).norm(), 1e-8);
      x = ph.a * x + ph.b * u;
    }
    x = ph.reset * x;
  }
}

TEST(Solver, EvaluateSumsRunningAndModeEndCosts) {
  std::mt19937 rng(9);
  LqPhase a = testing::random_lq_phase(rng, 2, 1, 5);
  LqPhase b = testing::random_lq_phase(rng, 2, 1, 4);
  const LqProblem problem({a, b});
  const Vector x0 = Eigen::Vector2d(1.0, -0.5);
  ControlSequence u;
  for (int k = 0; k < 9; ++k) u.push_back(Vector::Constant(1, 0.1 * k));
  const Evaluation e = evaluate(problem, u, x0);
  double cost = 0.0;
  Vector x = x0;
  for (int k = 0; k < 5; ++k) {
    cost += 0.5 * x.dot(a.q * x) + 0.5 * u[k].dot(a.r * u[k]);
    x = a.a * x + a.b * u[k];
  }
  cost += 0.5 * x.dot(a.qf * x);
  for (int k = 5; k < 9; ++k) {
    cost += 0.5 * x.dot(b.q * x) + 0.5 * u[k].dot(b.r * u[k]);
    x = b.a * x + b.b * u[k];
  }
  cost += 0.5 * x.dot(b.qf * x);
  EXPECT_NEAR(e.cost, cost, 1e-12);
  EXPECT_EQ(e.traj.phases[1].states.front(), e.traj.phases[0].states.back());
}

TEST(Solver, ZeroStepForwardSweepReproducesNominal) {
  const Pendulum problem;
  const Vector x0 = Eigen::Vector2d(0.0, 0.0);
  const Evaluation e = evaluate(problem, ControlSequence(60, Vector::Constant(1, 0.3)), x0);
  const BackwardResult b = backward_sweep(problem, e.traj, 1e-9, SolverOptions{});
  const auto f = forward_sweep(problem, e.traj, b.policy, 0.0, x0);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->cost, e.cost);
  EXPECT_LT(b.value.expected_change(1.0), 0.0);
}

TEST(Solver, AcceptedIterationsDecreaseTheCost) {
  const Pendulum problem;
  const Vector x0 = Eigen::Vector2d(0.0, 0.0);
  const Solution sol = solve(problem, ControlSequence(60, Vector::Zero(1)), x0);
  EXPECT_TRUE(sol.report.converged);
  double last = sol.report.initial_cost;
  for (const auto &it : sol.report.iterations) {
    if (it.accepted) {
      EXPECT_LT(it.cost, last);
      EXPECT_GT(it.actual, 0.0);
      last = it.cost;
    }
  }
  EXPECT_EQ(sol.cost, last);
  EXPECT_LT(std::abs(sol.traj.final_state()(0) - M_PI), 0.1);
  std::ostringstream os;
  write_iteration_csv(os, sol.report);
  EXPECT_EQ(os.str().substr(0, 30), "iteration,cost,base_cost,viola");
}

TEST(Solver, ZeroIterationsReturnsTheInitialGuess) {
  const Pendulum problem;
  SolverOptions o;
  o.max_iterations = 0;
  const ControlSequence u(60, Vector::Constant(1, 0.2));
  const Solution sol = solve(problem, u, Eigen::Vector2d(0.1, 0.0), o);
  EXPECT_FALSE(sol.report.converged);
  EXPECT_EQ(sol.traj.controls(), u);
}

}  // namespace
}  // namespace hsddp::ddp
