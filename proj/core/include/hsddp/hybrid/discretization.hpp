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
#include <vector>

#include "hsddp/hybrid/hybrid_system.hpp"
#include "hsddp/hybrid/mode_schedule.hpp"

namespace hsddp::hybrid {

/// Maps a HybridSystem with a timing onto discrete phases for shooting.
///
/// Every knot is one forward-Euler step of length knot_duration(). The
/// discrete state may extend the system state (the time-scaled form appends
/// the time state z).
class Discretization {
 public:
  explicit Discretization(std::shared_ptr<const HybridSystem> system);
  virtual ~Discretization() = default;

  const HybridSystem &system() const { return *system_; }
  std::shared_ptr<const HybridSystem> system_ptr() const { return system_; }

  virtual int state_dim() const = 0;
  int system_dim() const { return system_->state_dim(); }
  int control_dim() const { return system_->control_dim(); }
  int num_phases() const { return system_->num_modes(); }
  virtual int knots(int phase) const = 0;
  int total_knots() const;

  /// Physical time spanned by one knot of the phase.
  virtual double knot_duration(int phase, const Vector &x) const = 0;
  /// Gradient of knot_duration() with respect to the discrete state.
  virtual Vector knot_duration_gradient(int phase, const Vector &x) const = 0;

  virtual Vector step(int phase, const Vector &x, const Vector &u,
                      Vector *aux) const = 0;
  /// Step Jacobians; flow (if given) receives the continuous flow Jacobians
  /// with respect to the system state.
  virtual void step_jacobians(int phase, const Vector &x, const Vector &u,
                              Matrix &fx, Matrix &fu,
                              FlowJacobians *flow) const = 0;

  virtual Vector reset(int phase, const Vector &x, Vector *impulse) const = 0;
  virtual Matrix reset_jacobian(int phase, const Vector &x) const = 0;

  Vector system_state(const Vector &x) const { return x.head(system_dim()); }

 private:
  std::shared_ptr<const HybridSystem> system_;
};

/// Fixed integration step h; mode i spans knots[i] steps.
class FixedStepDiscretization : public Discretization {
 public:
  FixedStepDiscretization(std::shared_ptr<const HybridSystem> system,
                          std::vector<int> knots, double h);
  FixedStepDiscretization(std::shared_ptr<const HybridSystem> system,
                          const ModeSchedule &schedule, double h);

  double step_size() const { return h_; }
  int state_dim() const override { return system_dim(); }
  int knots(int phase) const override { return knots_.at(phase); }
  double knot_duration(int, const Vector &) const override { return h_; }
  Vector knot_duration_gradient(int, const Vector &x) const override {
    return Vector::Zero(x.size());
  }
  Vector step(int phase, const Vector &x, const Vector &u,
              Vector *aux) const override;
  void step_jacobians(int phase, const Vector &x, const Vector &u, Matrix &fx,
                      Matrix &fu, FlowJacobians *flow) const override;
  Vector reset(int phase, const Vector &x, Vector *impulse) const override;
  Matrix reset_jacobian(int phase, const Vector &x) const override;

 private:
  std::vector<int> knots_;
  double h_;
};

/// Time-scaled form: every mode spans a unit interval in tau split into a
/// fixed number of knots, and the discrete state is X = [x; z] with
/// z = [T_1 .. T_n]. One knot advances x by (1 / knots) T_i f_i(x, u).
class TimeScaledDiscretization : public Discretization {
 public:
  TimeScaledDiscretization(std::shared_ptr<const HybridSystem> system,
                           std::vector<int> knots_per_mode);
  TimeScaledDiscretization(std::shared_ptr<const HybridSystem> system,
                           int knots_per_mode);

  int state_dim() const override { return system_dim() + num_phases(); }
  int knots(int phase) const override { return knots_.at(phase); }
  double tau_step(int phase) const { return 1.0 / knots_.at(phase); }
  double knot_duration(int phase, const Vector &x) const override;
  Vector knot_duration_gradient(int phase, const Vector &x) const override;
  Vector step(int phase, const Vector &x, const Vector &u,
              Vector *aux) const override;
  void step_jacobians(int phase, const Vector &x, const Vector &u, Matrix &fx,
                      Matrix &fu, FlowJacobians *flow) const override;
  Vector reset(int phase, const Vector &x, Vector *impulse) const override;
  Matrix reset_jacobian(int phase, const Vector &x) const override;

  /// Stacks [x; z] after validating z > 0.
  Vector augment(const Vector &system_state, const Vector &durations) const;
  Vector durations(const Vector &x) const { return x.tail(num_phases()); }

 private:
  std::vector<int> knots_;
};

}  // namespace hsddp::hybrid
