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

#include "hsddp/constraints/augmented_problem.hpp"

namespace hsddp::constraints {

AugmentedCostModel::AugmentedCostModel(
    std::shared_ptr<const hybrid::Discretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost, std::optional<ALState> al,
    std::optional<ReBState> reb, HessianMode mode)
    : disc_(std::move(disc)),
      cost_(std::move(cost)),
      al_(std::move(al)),
      reb_(std::move(reb)),
      mode_(mode) {
  if (!disc_ || !cost_) throw InputError("cost model needs a discretization and a cost");
}

double AugmentedCostModel::running_base(int phase, const Vector &x,
                                        const Vector &u) const {
  const int n = disc_->system_dim();
  return disc_->knot_duration(phase, x) * cost_->running(phase, x.head(n), u);
}

double AugmentedCostModel::running_barrier(int phase, const Vector &x,
                                           const Vector &u,
                                           const Vector &aux) const {
  if (!reb_) return 0.0;
  const auto &sys = disc_->system();
  if (sys.num_inequalities(phase) == 0) return 0.0;
  Vector c;
  sys.inequalities(phase, x.head(disc_->system_dim()), u, aux, c);
  double b = 0.0;
  for (int j = 0; j < c.size(); ++j) {
    b += reb_value(c(j), reb_->delta, reb_->order);
  }
  return reb_->weight * b;
}

void AugmentedCostModel::running_expansion(int phase, const Vector &x,
                                           const Vector &u, const Vector &aux,
                                           const hybrid::FlowJacobians &flow,
                                           RunningExpansion &out) const {
  const int nx = disc_->state_dim();
  const int ns = disc_->system_dim();
  const int nu = disc_->control_dim();
  const Vector xs = x.head(ns);
  RunningExpansion l;
  cost_->running_expansion(phase, xs, u, l);
  const double dt = disc_->knot_duration(phase, x);
  const Vector dt_x = disc_->knot_duration_gradient(phase, x);

  out.set_zero(nx, nu);
  out.value = dt * l.value;
  out.lx.head(ns) = dt * l.lx;
  out.lx += l.value * dt_x;
  out.lu = dt * l.lu;
  out.lxx.topLeftCorner(ns, ns) = dt * l.lxx;
  Vector lx_full = Vector::Zero(nx);
  lx_full.head(ns) = l.lx;
  out.lxx += dt_x * lx_full.transpose() + lx_full * dt_x.transpose();
  out.luu = dt * l.luu;
  out.lux.leftCols(ns) = dt * l.lux;
  out.lux += l.lu * dt_x.transpose();

  if (reb_) add_barrier_expansion(phase, xs, u, aux, flow, out);
}

void AugmentedCostModel::add_barrier_expansion(
    int phase, const Vector &xs, const Vector &u, const Vector &aux,
    const hybrid::FlowJacobians &flow, RunningExpansion &out) const {
  const auto &sys = disc_->system();
  const int m = sys.num_inequalities(phase);
  if (m == 0) return;
  const int ns = disc_->system_dim();
  const int nu = disc_->control_dim();
  Vector c;
  Matrix cx, cu;
  sys.inequalities(phase, xs, u, aux, c);
  sys.inequality_jacobians(phase, xs, u, aux, flow, cx, cu);
  const double w = reb_->weight;
  Vector d1(m), d2(m);
  for (int j = 0; j < m; ++j) {
    out.value += w * reb_value(c(j), reb_->delta, reb_->order);
    d1(j) = w * reb_grad(c(j), reb_->delta, reb_->order);
    d2(j) = w * reb_hess(c(j), reb_->delta, reb_->order);
  }
  out.lx.head(ns) += cx.transpose() * d1;
  out.lu += cu.transpose() * d1;
  out.lxx.topLeftCorner(ns, ns) += cx.transpose() * d2.asDiagonal() * cx;
  out.luu += cu.transpose() * d2.asDiagonal() * cu;
  out.lux.leftCols(ns) += cu.transpose() * d2.asDiagonal() * cx;

  if (mode_ != HessianMode::kExact) return;
  // sum_j d1_j * Hess(c_j) over w = [x; u], differencing the analytic
  // Jacobians column by column.
  const int nw = ns + nu;
  Matrix curvature = Matrix::Zero(nw, nw);
  const double h = 1e-6;
  for (int a = 0; a < nw; ++a) {
    Matrix rows[2];
    for (int s = 0; s < 2; ++s) {
      Vector xp = xs;
      Vector up = u;
      const double delta = s == 0 ? h : -h;
      if (a < ns) xp(a) += delta; else up(a - ns) += delta;
      hybrid::FlowJacobians fj;
      Vector auxp;
      sys.flow(phase, xp, up, &auxp);
      sys.flow_jacobians(phase, xp, up, fj);
      Matrix jx, ju;
      sys.inequality_jacobians(phase, xp, up, auxp, fj, jx, ju);
      rows[s].resize(m, nw);
      rows[s] << jx, ju;
    }
    curvature.col(a) = ((rows[0] - rows[1]) / (2.0 * h)).transpose() * d1;
  }
  symmetrize(curvature);
  out.lxx.topLeftCorner(ns, ns) += curvature.topLeftCorner(ns, ns);
  out.luu += curvature.bottomRightCorner(nu, nu);
  out.lux.leftCols(ns) += curvature.bottomLeftCorner(nu, ns);
}

double AugmentedCostModel::terminal_base(int phase, const Vector &x) const {
  return cost_->terminal(phase, x.head(disc_->system_dim()));
}

double AugmentedCostModel::terminal_penalty(int phase, const Vector &x) const {
  if (!al_) return 0.0;
  const auto &sys = disc_->system();
  if (!sys.has_switching_constraint(phase)) return 0.0;
  const double g = sys.switching_gap(phase, x.head(disc_->system_dim()));
  return penalty(g, al_->sigma, al_->multiplier(phase), al_->form).value;
}

void AugmentedCostModel::terminal_expansion(int phase, const Vector &x,
                                            TerminalExpansion &out) const {
  const int nx = disc_->state_dim();
  const int ns = disc_->system_dim();
  const Vector xs = x.head(ns);
  TerminalExpansion phi;
  cost_->terminal_expansion(phase, xs, phi);
  out.set_zero(nx);
  out.value = phi.value;
  out.phix.head(ns) = phi.phix;
  out.phixx.topLeftCorner(ns, ns) = phi.phixx;

  if (!al_) return;
  const auto &sys = disc_->system();
  if (!sys.has_switching_constraint(phase)) return;
  Vector gx;
  Matrix gxx;
  const double g = sys.switching_gap(phase, xs);
  sys.switching_gap_derivatives(phase, xs, gx, gxx);
  const PenaltyScalar p = penalty(g, al_->sigma, al_->multiplier(phase), al_->form);
  out.value += p.value;
  out.phix.head(ns) += p.d1 * gx;
  out.phixx.topLeftCorner(ns, ns) += p.d2 * gx * gx.transpose();
  if (mode_ == HessianMode::kExact) out.phixx.topLeftCorner(ns, ns) += p.d1 * gxx;
}

CostBreakdown AugmentedCostModel::breakdown(const Trajectory &traj) const {
  CostBreakdown b;
  for (int i = 0; i < static_cast<int>(traj.phases.size()); ++i) {
    const PhaseTrajectory &p = traj.phases[i];
    for (int k = 0; k < p.knots(); ++k) {
      b.base += running_base(i, p.states[k], p.controls[k]);
      b.barrier += running_barrier(i, p.states[k], p.controls[k], p.aux[k]);
    }
    b.base += terminal_base(i, p.states.back());
    b.penalty += terminal_penalty(i, p.states.back());
  }
  return b;
}

ConstrainedHybridProblem::ConstrainedHybridProblem(
    std::shared_ptr<const hybrid::Discretization> disc,
    std::shared_ptr<const hybrid::StageCost> cost, std::optional<ALState> al,
    std::optional<ReBState> reb, HessianMode mode)
    : disc_(disc),
      model_(std::move(disc), std::move(cost), std::move(al), std::move(reb),
             mode) {}

void ConstrainedHybridProblem::knot_model(int phase, const Vector &x,
                                          const Vector &u, const Vector &aux,
                                          ddp::KnotModel &out) const {
  hybrid::FlowJacobians flow;
  disc_->step_jacobians(phase, x, u, out.fx, out.fu, &flow);
  model_.running_expansion(phase, x, u, aux, flow, out.cost);
}

}  // namespace hsddp::constraints
