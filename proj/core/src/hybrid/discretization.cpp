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

#include "hsddp/hybrid/discretization.hpp"

#include <string>

namespace hsddp::hybrid {

Discretization::Discretization(std::shared_ptr<const HybridSystem> system)
    : system_(std::move(system)) {
  if (!system_) throw InputError("discretization needs a system");
}

int Discretization::total_knots() const {
  int n = 0;
  for (int i = 0; i < num_phases(); ++i) n += knots(i);
  return n;
}

FixedStepDiscretization::FixedStepDiscretization(
    std::shared_ptr<const HybridSystem> system, std::vector<int> knots, double h)
    : Discretization(std::move(system)), knots_(std::move(knots)), h_(h) {
  if (!(h_ > 0.0)) throw InputError("integration step must be positive");
  if (static_cast<int>(knots_.size()) != num_phases()) {
    throw InputError("one knot count per mode required");
  }
  for (int n : knots_) {
    if (n < 1) throw InputError("every mode needs at least one knot");
  }
}

FixedStepDiscretization::FixedStepDiscretization(
    std::shared_ptr<const HybridSystem> system, const ModeSchedule &schedule,
    double h)
    : FixedStepDiscretization(std::move(system), schedule.knot_counts(h), h) {}

Vector FixedStepDiscretization::step(int phase, const Vector &x,
                                     const Vector &u, Vector *aux) const {
  return x + h_ * system().flow(phase, x, u, aux);
}

void FixedStepDiscretization::step_jacobians(int phase, const Vector &x,
                                             const Vector &u, Matrix &fx,
                                             Matrix &fu,
                                             FlowJacobians *flow) const {
  FlowJacobians local;
  FlowJacobians &j = flow ? *flow : local;
  system().flow_jacobians(phase, x, u, j);
  fx = h_ * j.dfdx;
  fx.diagonal().array() += 1.0;
  fu = h_ * j.dfdu;
}

Vector FixedStepDiscretization::reset(int phase, const Vector &x,
                                      Vector *impulse) const {
  if (!system().has_reset(phase)) {
    if (impulse) impulse->resize(0);
    return x;
  }
  return system().reset(phase, x, impulse);
}

Matrix FixedStepDiscretization::reset_jacobian(int phase,
                                               const Vector &x) const {
  if (!system().has_reset(phase)) return Matrix::Identity(x.size(), x.size());
  return system().reset_jacobian(phase, x);
}

TimeScaledDiscretization::TimeScaledDiscretization(
    std::shared_ptr<const HybridSystem> system, std::vector<int> knots_per_mode)
    : Discretization(std::move(system)), knots_(std::move(knots_per_mode)) {
  if (static_cast<int>(knots_.size()) != num_phases()) {
    throw InputError("one knot count per mode required");
  }
  for (int n : knots_) {
    if (n < 1) throw InputError("every mode needs at least one knot");
  }
}

TimeScaledDiscretization::TimeScaledDiscretization(
    std::shared_ptr<const HybridSystem> system, int knots_per_mode)
    : TimeScaledDiscretization(
          system, std::vector<int>(system ? system->num_modes() : 0,
                                   knots_per_mode)) {}

double TimeScaledDiscretization::knot_duration(int phase,
                                               const Vector &x) const {
  return tau_step(phase) * x(system_dim() + phase);
}

Vector TimeScaledDiscretization::knot_duration_gradient(int phase,
                                                        const Vector &x) const {
  Vector g = Vector::Zero(x.size());
  g(system_dim() + phase) = tau_step(phase);
  return g;
}

Vector TimeScaledDiscretization::step(int phase, const Vector &x,
                                      const Vector &u, Vector *aux) const {
  const int n = system_dim();
  const double duration = x(n + phase);
  if (!(duration > 0.0)) {
    throw InputError("mode duration T_" + std::to_string(phase) +
                     " must be positive");
  }
  Vector next = x;
  next.head(n) += tau_step(phase) * duration *
                  system().flow(phase, x.head(n), u, aux);
  return next;
}

void TimeScaledDiscretization::step_jacobians(int phase, const Vector &x,
                                              const Vector &u, Matrix &fx,
                                              Matrix &fu,
                                              FlowJacobians *flow) const {
  const int n = system_dim();
  const int dim = state_dim();
  const double dtau = tau_step(phase);
  const double duration = x(n + phase);
  FlowJacobians local;
  FlowJacobians &j = flow ? *flow : local;
  const Vector xs = x.head(n);
  system().flow_jacobians(phase, xs, u, j);
  const Vector f = system().flow(phase, xs, u, nullptr);

  fx = Matrix::Identity(dim, dim);
  fx.topLeftCorner(n, n) += dtau * duration * j.dfdx;
  fx.col(n + phase).head(n) = dtau * f;
  fu = Matrix::Zero(dim, control_dim());
  fu.topRows(n) = dtau * duration * j.dfdu;
}

Vector TimeScaledDiscretization::reset(int phase, const Vector &x,
                                       Vector *impulse) const {
  if (!system().has_reset(phase)) {
    if (impulse) impulse->resize(0);
    return x;
  }
  const int n = system_dim();
  Vector out = x;
  out.head(n) = system().reset(phase, x.head(n), impulse);
  return out;
}

Matrix TimeScaledDiscretization::reset_jacobian(int phase,
                                                const Vector &x) const {
  Matrix out = Matrix::Identity(x.size(), x.size());
  if (!system().has_reset(phase)) return out;
  const int n = system_dim();
  out.topLeftCorner(n, n) = system().reset_jacobian(phase, x.head(n));
  return out;
}

Vector TimeScaledDiscretization::augment(const Vector &system_state,
                                         const Vector &durations) const {
  if (system_state.size() != system_dim() || durations.size() != num_phases()) {
    throw InputError("augmented state has inconsistent dimensions");
  }
  for (int i = 0; i < durations.size(); ++i) {
    if (!(durations(i) > 0.0)) {
      throw InputError("mode durations must be positive");
    }
  }
  Vector out(state_dim());
  out << system_state, durations;
  return out;
}

}  // namespace hsddp::hybrid
