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

#pragma once

#include <memory>
#include <optional>

#include "hsddp/common/trajectory.hpp"
#include "hsddp/constraints/augmented_lagrangian.hpp"
#include "hsddp/constraints/relaxed_barrier.hpp"
#include "hsddp/ddp/problem.hpp"
#include "hsddp/hybrid/discretization.hpp"
#include "hsddp/hybrid/stage_cost.hpp"

namespace hsddp::constraints {

/// Barrier and penalty curvature. kGaussNewton keeps only the
/// gradient-outer-product part; kExact adds the constraint curvature (the
/// relaxed-barrier part by central differences of the analytic Jacobians).
enum class HessianMode { kGaussNewton, kExact };

struct CostBreakdown {
  double base = 0.0;
  double penalty = 0.0;  // switching-constraint terms
  double barrier = 0.0;  // relaxed-barrier terms
  double total() const { return base + penalty + barrier; }
};

/// Base cost plus penalty terms on switching residuals at mode ends and
/// relaxed-barrier terms on the per-knot inequalities.
///
/// The base integrand is scaled by the knot duration; the barrier sum is not.
class AugmentedCostModel {
 public:
  AugmentedCostModel(std::shared_ptr<const hybrid::Discretization> disc,
                     std::shared_ptr<const hybrid::StageCost> cost,
                     std::optional<ALState> al, std::optional<ReBState> reb,
                     HessianMode mode = HessianMode::kGaussNewton);

  const hybrid::Discretization &discretization() const { return *disc_; }
  const std::optional<ALState> &al() const { return al_; }
  const std::optional<ReBState> &reb() const { return reb_; }
  HessianMode hessian_mode() const { return mode_; }

  double running_base(int phase, const Vector &x, const Vector &u) const;
  double running_barrier(int phase, const Vector &x, const Vector &u,
                         const Vector &aux) const;
  double running(int phase, const Vector &x, const Vector &u,
                 const Vector &aux) const {
    return running_base(phase, x, u) + running_barrier(phase, x, u, aux);
  }
  /// flow holds the continuous flow Jacobians at the system part of x.
  void running_expansion(int phase, const Vector &x, const Vector &u,
                         const Vector &aux, const hybrid::FlowJacobians &flow,
                         RunningExpansion &out) const;

  double terminal_base(int phase, const Vector &x) const;
  double terminal_penalty(int phase, const Vector &x) const;
  double terminal(int phase, const Vector &x) const {
    return terminal_base(phase, x) + terminal_penalty(phase, x);
  }
  void terminal_expansion(int phase, const Vector &x,
                          TerminalExpansion &out) const;

  CostBreakdown breakdown(const Trajectory &traj) const;

 private:
  void add_barrier_expansion(int phase, const Vector &xs, const Vector &u,
                             const Vector &aux,
                             const hybrid::FlowJacobians &flow,
                             RunningExpansion &out) const;

  std::shared_ptr<const hybrid::Discretization> disc_;
  std::shared_ptr<const hybrid::StageCost> cost_;
  std::optional<ALState> al_;
  std::optional<ReBState> reb_;
  HessianMode mode_;
};

/// The hybrid optimal control problem handed to the DDP solver.
class ConstrainedHybridProblem : public ddp::OptimalControlProblem {
 public:
  ConstrainedHybridProblem(std::shared_ptr<const hybrid::Discretization> disc,
                           std::shared_ptr<const hybrid::StageCost> cost,
                           std::optional<ALState> al, std::optional<ReBState> reb,
                           HessianMode mode = HessianMode::kGaussNewton);

  const AugmentedCostModel &cost_model() const { return model_; }
  const hybrid::Discretization &discretization() const { return *disc_; }

  int state_dim() const override { return disc_->state_dim(); }
  int control_dim() const override { return disc_->control_dim(); }
  int num_phases() const override { return disc_->num_phases(); }
  int knots(int phase) const override { return disc_->knots(phase); }

  Vector step(int phase, const Vector &x, const Vector &u,
              Vector *aux) const override {
    return disc_->step(phase, x, u, aux);
  }
  Vector reset(int phase, const Vector &x, Vector *impulse) const override {
    return disc_->reset(phase, x, impulse);
  }
  Matrix reset_jacobian(int phase, const Vector &x) const override {
    return disc_->reset_jacobian(phase, x);
  }
  double running_cost(int phase, const Vector &x, const Vector &u,
                      const Vector &aux) const override {
    return model_.running(phase, x, u, aux);
  }
  double terminal_cost(int phase, const Vector &x) const override {
    return model_.terminal(phase, x);
  }
  void knot_model(int phase, const Vector &x, const Vector &u,
                  const Vector &aux, ddp::KnotModel &out) const override;
  void terminal_expansion(int phase, const Vector &x,
                          TerminalExpansion &out) const override {
    model_.terminal_expansion(phase, x, out);
  }

 private:
  std::shared_ptr<const hybrid::Discretization> disc_;
  AugmentedCostModel model_;
};

}  // namespace hsddp::constraints
