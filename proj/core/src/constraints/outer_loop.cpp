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

#include "hsddp/constraints/outer_loop.hpp"

#include "hsddp/common/format.hpp"
#include "hsddp/hybrid/residuals.hpp"

namespace hsddp::constraints {

namespace {

std::optional<ALState> al_or_none(const ALState &al, bool use) {
  if (!use) return std::nullopt;
  return al;
}

}  // namespace

OuterResult outer_loop(std::shared_ptr<const hybrid::Discretization> disc,
                       std::shared_ptr<const hybrid::StageCost> cost,
                       const ControlSequence &initial_controls,
                       const Vector &x0, const OuterLoopOptions &options,
                       const std::optional<OuterWarmStart> &warm) {
  if (options.max_al_iterations < 0) {
    throw InputError("AL iteration cap must be nonnegative");
  }
  const auto &sys = disc->system();
  OuterResult result;
  if (warm) {
    result.al = warm->al;
    result.reb = warm->reb;
  } else {
    result.al = ALState::initial(sys, options.sigma, options.beta,
                                 options.al_tolerance, options.form);
    if (options.use_reb) {
      options.reb.validate();
      result.reb = options.reb;
    }
  }
  if (!options.use_reb) result.reb.reset();

  ControlSequence controls = initial_controls;
  for (int eta = 0;; ++eta) {
    ConstrainedHybridProblem problem(disc, cost, al_or_none(result.al, options.use_al),
                                     result.reb, options.hessian);
    ddp::SolverOptions ddp_opts = options.ddp;
    ddp_opts.on_iteration = [&](ddp::IterationRecord &rec, const Trajectory &t) {
      rec.base_cost = problem.cost_model().breakdown(t).base;
      rec.violation = hybrid::switching_residuals(sys, t).sum_squares();
      if (options.ddp.on_iteration) options.ddp.on_iteration(rec, t);
    };
    result.solution = ddp::solve(problem, controls, x0, ddp_opts);
    const ddp::Solution &sol = result.solution;

    const auto residuals = hybrid::switching_residuals(sys, sol.traj);
    result.violation = residuals.sum_squares();
    result.base_cost = problem.cost_model().breakdown(sol.traj).base;

    ALIterationRecord rec;
    rec.eta = eta;
    rec.sigma = result.al.sigma;
    rec.max_lambda = result.al.max_abs_multiplier();
    rec.delta = result.reb ? result.reb->delta : 0.0;
    rec.violation = result.violation;
    rec.base_cost = result.base_cost;
    rec.cost = sol.cost;
    rec.min_margin = hybrid::min_margin(hybrid::inequality_residuals(sys, sol.traj));
    rec.ddp_iterations = static_cast<int>(sol.report.iterations.size());
    rec.ddp_converged = sol.report.converged;
    result.report.al_iterations.push_back(rec);
    for (const auto &it : sol.report.iterations) {
      result.report.ddp.iterations.push_back(it);
      result.report.ddp_al_index.push_back(eta);
    }
    if (eta == 0) result.report.ddp.initial_cost = sol.report.initial_cost;
    result.report.ddp.final_cost = sol.cost;

    if (!options.use_al || result.violation <= result.al.tolerance) {
      result.report.converged = options.use_al ? true : sol.report.converged;
      result.report.reason = options.use_al
                                 ? "switching violation below tolerance"
                                 : "single solve without switching penalties";
      break;
    }
    if (eta >= options.max_al_iterations) {
      result.report.converged = false;
      result.report.reason = "AL iteration cap reached";
      break;
    }
    result.al = al_update(result.al, residuals);
    if (result.reb) result.reb = result.reb->decayed();
    controls = sol.traj.controls();
  }
  result.report.ddp.converged = result.report.converged;
  result.report.ddp.reason = result.report.reason;
  return result;
}

ConstrainedHybridProblem problem_of(
    std::shared_ptr<const hybrid::Discretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost, const OuterResult &result,
    const OuterLoopOptions &options) {
  return ConstrainedHybridProblem(std::move(disc), std::move(cost),
                                  al_or_none(result.al, options.use_al),
                                  result.reb, options.hessian);
}

void write_al_csv(std::ostream &os, const OuterReport &report) {
  os << "eta,sigma,max_lambda,delta,violation,base_cost,cost,min_margin,"
        "ddp_iterations,ddp_converged\n";
  for (const auto &r : report.al_iterations) {
    os << r.eta << ',' << format_double(r.sigma) << ','
       << format_double(r.max_lambda) << ',' << format_double(r.delta) << ','
       << format_double(r.violation) << ',' << format_double(r.base_cost) << ','
       << format_double(r.cost) << ',' << format_double(r.min_margin) << ','
       << r.ddp_iterations << ',' << (r.ddp_converged ? 1 : 0) << '\n';
  }
}

void write_ddp_csv(std::ostream &os, const OuterReport &report) {
  os << "eta,iteration,cost,base_cost,violation,expected,actual,reg,step,"
        "backtracks,accepted\n";
  const auto &its = report.ddp.iterations;
  for (size_t i = 0; i < its.size(); ++i) {
    const auto &it = its[i];
    os << report.ddp_al_index[i] << ',' << it.iteration << ','
       << format_double(it.cost) << ',' << format_double(it.base_cost) << ','
       << format_double(it.violation) << ',' << format_double(it.expected)
       << ',' << format_double(it.actual) << ',' << format_double(it.reg) << ','
       << format_double(it.step) << ',' << it.backtracks << ','
       << (it.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace hsddp::constraints
