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

#include "hsddp/sto/sto_solver.hpp"

#include <algorithm>
#include <iostream>

#include <Eigen/Cholesky>

#include "hsddp/common/format.hpp"

namespace hsddp::sto {

Vector newton_step(const Vector &vz, const Matrix &vzz, double reg_init,
                   double reg_max, double reg_increase, double &reg) {
  Matrix h = vzz;
  symmetrize(h);
  reg = 0.0;
  for (;;) {
    Matrix hr = h;
    hr.diagonal().array() += reg;
    Eigen::LLT<Matrix> llt(hr);
    if (llt.info() == Eigen::Success) {
      Vector step = -llt.solve(vz);
      if (step.allFinite()) return step;
    }
    reg = reg == 0.0 ? reg_init : reg * reg_increase;
    if (reg > reg_max) {
      throw NumericalError("timing Hessian could not be regularized");
    }
  }
}

namespace {

TimingIterate make_iterate(int it, const Vector &z,
                           const constraints::OuterResult &inner, int ns) {
  TimingIterate t;
  t.iteration = it;
  t.z = z;
  t.total_time = z.sum();
  t.cost = inner.solution.cost;
  t.base_cost = inner.base_cost;
  t.violation = inner.violation;
  const int nz = static_cast<int>(z.size());
  if (inner.solution.value.vx.size() == ns + nz) {
    t.vz = inner.solution.value.vx.tail(nz);
    t.vzz = inner.solution.value.vxx.bottomRightCorner(nz, nz);
  }
  return t;
}

}  // namespace

StoResult sto_solve(std::shared_ptr<const hybrid::TimeScaledDiscretization> disc,
                    std::shared_ptr<const hybrid::StageCost> cost,
                    const ControlSequence &initial_controls, const Vector &x0,
                    const Vector &z0, const StoOptions &options) {
  if (options.max_iterations < 0) throw InputError("STO iteration cap must be nonnegative");
  if (!(options.min_duration > 0.0)) throw InputError("duration floor must be positive");
  const int ns = disc->system_dim();
  Vector z = z0;
  StoResult res;
  res.report.feedforward_baseline = options.feedforward_baseline;
  res.inner = constraints::outer_loop(disc, cost, initial_controls,
                                      disc->augment(x0, z), options.outer);

  for (int it = 0;; ++it) {
    TimingIterate rec = make_iterate(it, z, res.inner, ns);
    if (it >= options.max_iterations) {
      res.report.iterations.push_back(rec);
      res.report.reason = "iteration limit reached";
      break;
    }
    if (rec.vz.size() == 0) {
      res.report.iterations.push_back(rec);
      res.report.stalled = true;
      res.report.reason = "no value model at the initial knot";
      break;
    }
    try {
      rec.newton_step = newton_step(rec.vz, rec.vzz, options.reg_init,
                                    options.reg_max, options.reg_increase, rec.reg);
    } catch (const NumericalError &e) {
      res.report.iterations.push_back(rec);
      res.report.stalled = true;
      res.report.reason = e.what();
      break;
    }
    if (rec.newton_step.norm() < options.step_tolerance) {
      res.report.iterations.push_back(rec);
      res.report.converged = true;
      res.report.reason = "timing step below tolerance";
      break;
    }

    // Candidate timings are judged on the problem the inner loop converged on.
    const auto problem = constraints::problem_of(disc, cost, res.inner, options.outer);
    ddp::Policy policy = res.inner.solution.policy;
    if (options.feedforward_baseline) {
      for (auto &g : policy.gain) g.setZero();
    }
    const double j0 = res.inner.solution.cost;
    std::optional<ddp::Evaluation> accepted;
    Vector z_new;
    double eps = 1.0;
    for (int b = 0; b <= options.max_backtracks; ++b, eps *= options.step_factor) {
      Vector zc = z + eps * rec.newton_step;
      bool floored = false;
      for (int i = 0; i < zc.size(); ++i) {
        if (zc(i) < options.min_duration) {
          zc(i) = options.min_duration;
          floored = true;
        }
      }
      auto cand = ddp::forward_sweep(problem, res.inner.solution.traj, policy,
                                     0.0, disc->augment(x0, zc));
      if (cand && cand->cost < j0) {
        accepted = std::move(cand);
        z_new = zc;
        rec.step = eps;
        rec.floor_active = floored;
        if (floored) {
          std::cerr << "note: duration floor of " << options.min_duration
                    << " s active at timing iteration " << it << "\n";
        }
        break;
      }
    }
    res.report.iterations.push_back(rec);
    if (!accepted) {
      res.report.stalled = true;
      res.report.reason = "timing line search exhausted";
      break;
    }
    z = z_new;
    std::optional<constraints::OuterWarmStart> warm;
    if (!options.reset_multipliers) {
      warm = constraints::OuterWarmStart{res.inner.al, res.inner.reb};
    }
    res.inner = constraints::outer_loop(disc, cost, accepted->traj.controls(),
                                        disc->augment(x0, z), options.outer, warm);
  }
  res.z = z;
  return res;
}

StoResult sto_solve_feedforward_baseline(
    std::shared_ptr<const hybrid::TimeScaledDiscretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost,
    const ControlSequence &initial_controls, const Vector &x0, const Vector &z0,
    StoOptions options) {
  options.feedforward_baseline = true;
  return sto_solve(std::move(disc), std::move(cost), initial_controls, x0, z0,
                   options);
}

void write_sto_csv(std::ostream &os, const StoReport &report) {
  if (report.iterations.empty()) return;
  const int nz = static_cast<int>(report.iterations.front().z.size());
  os << "iteration";
  for (int i = 0; i < nz; ++i) os << ",T" << i;
  os << ",total_time,cost,base_cost,violation,step_norm,eps_z,reg,floor\n";
  for (const auto &t : report.iterations) {
    os << t.iteration;
    for (int i = 0; i < nz; ++i) os << ',' << format_double(t.z(i));
    os << ',' << format_double(t.total_time) << ',' << format_double(t.cost)
       << ',' << format_double(t.base_cost) << ','
       << format_double(t.violation) << ','
       << format_double(t.newton_step.size() ? t.newton_step.norm() : 0.0)
       << ',' << format_double(t.step) << ',' << format_double(t.reg) << ','
       << (t.floor_active ? 1 : 0) << '\n';
  }
}

}  // namespace hsddp::sto
