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

#include "hsddp/ddp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hsddp::ddp {

namespace {

void check_controls(const OptimalControlProblem &problem,
                    const ControlSequence &controls, const Vector &x0) {
  if (static_cast<int>(controls.size()) != problem.total_knots()) {
    throw InputError("expected " + std::to_string(problem.total_knots()) +
                     " controls, got " + std::to_string(controls.size()));
  }
  if (x0.size() != problem.state_dim()) {
    throw InputError("initial state has the wrong dimension");
  }
  for (const auto &u : controls) {
    if (u.size() != problem.control_dim() || !u.allFinite()) {
      throw InputError("control vector has the wrong size or is not finite");
    }
  }
}

// Shared by evaluate() and forward_sweep(): control_at(k, x) supplies u_k.
template <typename ControlFn>
Evaluation shoot(const OptimalControlProblem &problem, const Vector &x0,
                 ControlFn control_at) {
  Evaluation out;
  out.traj.phases.resize(problem.num_phases());
  Vector x = x0;
  double cost = 0.0;
  int k = 0;
  for (int i = 0; i < problem.num_phases(); ++i) {
    PhaseTrajectory &p = out.traj.phases[i];
    const int n = problem.knots(i);
    p.phase = i;
    p.states.reserve(n + 1);
    p.controls.reserve(n);
    p.aux.reserve(n);
    p.states.push_back(x);
    for (int j = 0; j < n; ++j, ++k) {
      Vector u = control_at(k, x);
      Vector aux;
      Vector next = problem.step(i, x, u, &aux);
      cost += problem.running_cost(i, x, u, aux);
      p.controls.push_back(std::move(u));
      p.aux.push_back(std::move(aux));
      p.states.push_back(next);
      x = std::move(next);
    }
    cost += problem.terminal_cost(i, x);
    if (i + 1 < problem.num_phases()) {
      x = problem.reset(i, x, &p.impulse);
    }
  }
  out.cost = cost;
  return out;
}

}  // namespace

Evaluation evaluate(const OptimalControlProblem &problem,
                    const ControlSequence &controls, const Vector &x0) {
  check_controls(problem, controls, x0);
  return shoot(problem, x0,
               [&](int k, const Vector &) -> Vector { return controls[k]; });
}

std::optional<BackwardResult> backward_sweep(const OptimalControlProblem &problem,
                                             const Trajectory &nominal,
                                             double reg) {
  const int total = nominal.total_knots();
  BackwardResult out;
  out.reg = reg;
  out.policy.kappa.resize(total);
  out.policy.gain.resize(total);

  ValueExpansion v;
  KnotModel km;
  TerminalExpansion phi;
  int k = total;
  for (int i = problem.num_phases() - 1; i >= 0; --i) {
    const PhaseTrajectory &p = nominal.phases[i];
    problem.terminal_expansion(i, p.states.back(), phi);
    if (i == problem.num_phases() - 1) {
      v.dv1 = 0.0;
      v.dv2 = 0.0;
      v.vx = phi.phix;
      v.vxx = phi.phixx;
    } else {
      v = impact_value_update(v, problem.reset_jacobian(i, p.states.back()), phi);
    }
    for (int j = p.knots() - 1; j >= 0; --j) {
      --k;
      problem.knot_model(i, p.states[j], p.controls[j], p.aux[j], km);
      const QExpansion q = q_expansion(km.cost, km.fx, km.fu, v, reg);
      auto update = policy_and_value_update(q, v);
      if (!update) return std::nullopt;
      out.policy.kappa[k] = std::move(update->policy.kappa);
      out.policy.gain[k] = std::move(update->policy.gain);
      v = std::move(update->value);
    }
  }
  out.value = std::move(v);
  return out;
}

BackwardResult backward_sweep(const OptimalControlProblem &problem,
                              const Trajectory &nominal, double reg,
                              const SolverOptions &options) {
  reg = std::max(reg, options.reg_min);
  while (reg <= options.reg_max) {
    if (auto r = backward_sweep(problem, nominal, reg)) return std::move(*r);
    reg *= options.reg_increase;
  }
  throw NumericalError("regularization exceeded its cap of " +
                       std::to_string(options.reg_max));
}

std::optional<Evaluation> forward_sweep(const OptimalControlProblem &problem,
                                        const Trajectory &nominal,
                                        const Policy &policy, double eps,
                                        const Vector &x0) {
  std::vector<const Vector *> xs;
  std::vector<const Vector *> us;
  xs.reserve(policy.knots());
  us.reserve(policy.knots());
  for (const auto &p : nominal.phases) {
    for (int j = 0; j < p.knots(); ++j) {
      xs.push_back(&p.states[j]);
      us.push_back(&p.controls[j]);
    }
  }
  try {
    Evaluation e = shoot(problem, x0, [&](int k, const Vector &x) -> Vector {
      Vector u = *us[k] + eps * policy.kappa[k];
      u.noalias() += policy.gain[k] * (x - *xs[k]);
      return u;
    });
    if (!std::isfinite(e.cost)) return std::nullopt;
    for (const auto &p : e.traj.phases) {
      for (const auto &x : p.states) {
        if (!x.allFinite()) return std::nullopt;
      }
    }
    return e;
  } catch (const NumericalError &) {
    return std::nullopt;
  } catch (const InputError &) {
    return std::nullopt;
  }
}

Solution solve(const OptimalControlProblem &problem,
               const ControlSequence &initial_controls, const Vector &x0,
               const SolverOptions &options) {
  Evaluation nominal = evaluate(problem, initial_controls, x0);
  if (!std::isfinite(nominal.cost)) {
    throw NumericalError("initial rollout has a non-finite cost");
  }
  Solution sol;
  sol.report.initial_cost = nominal.cost;
  double reg = std::max(options.reg_init, options.reg_min);
  std::optional<BackwardResult> bwd;

  for (int it = 0; it < options.max_iterations; ++it) {
    IterationRecord rec;
    rec.iteration = it;
    try {
      bwd = backward_sweep(problem, nominal.traj, reg, options);
    } catch (const NumericalError &e) {
      sol.report.reason = e.what();
      bwd.reset();
      break;
    }
    reg = bwd->reg;
    rec.reg = reg;
    rec.expected = -bwd->value.expected_change(1.0);
    if (std::abs(rec.expected) < options.cost_tolerance) {
      rec.cost = nominal.cost;
      if (options.on_iteration) options.on_iteration(rec, nominal.traj);
      sol.report.iterations.push_back(rec);
      sol.report.converged = true;
      sol.report.reason = "expected reduction below tolerance";
      break;
    }

    double eps = 1.0;
    for (int b = 0; b <= options.max_backtracks; ++b, eps *= options.step_factor) {
      auto cand = forward_sweep(problem, nominal.traj, bwd->policy, eps, x0);
      if (cand && cand->cost < nominal.cost) {
        rec.accepted = true;
        rec.step = eps;
        rec.backtracks = b;
        rec.actual = nominal.cost - cand->cost;
        nominal = std::move(*cand);
        break;
      }
    }
    bwd.reset();  // stale once the nominal moves
    rec.cost = nominal.cost;
    if (rec.accepted) {
      reg = std::max(reg / options.reg_decrease, options.reg_min);
    } else {
      rec.backtracks = options.max_backtracks;
      reg *= options.reg_increase;
    }
    if (options.on_iteration) options.on_iteration(rec, nominal.traj);
    sol.report.iterations.push_back(rec);
    if (!rec.accepted && reg > options.reg_max) {
      sol.report.reason = "line search exhausted at maximum regularization";
      break;
    }
  }
  if (sol.report.reason.empty()) sol.report.reason = "iteration limit reached";

  if (!bwd) {
    // Value model and policy at the returned nominal.
    try {
      bwd = backward_sweep(problem, nominal.traj, reg, options);
    } catch (const NumericalError &) {
      bwd = BackwardResult{};
      bwd->reg = options.reg_max;
    }
  }
  sol.traj = std::move(nominal.traj);
  sol.cost = nominal.cost;
  sol.report.final_cost = sol.cost;
  sol.policy = std::move(bwd->policy);
  sol.value = std::move(bwd->value);
  sol.reg = bwd->reg;
  return sol;
}

}  // namespace hsddp::ddp
