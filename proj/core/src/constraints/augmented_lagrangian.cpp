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

#include "hsddp/constraints/augmented_lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hsddp::constraints {

ALState ALState::initial(const hybrid::HybridSystem &system, double sigma,
                         double beta, double tolerance, PenaltyForm form) {
  ALState al;
  al.sigma = sigma;
  al.beta = beta;
  al.tolerance = tolerance;
  al.form = form;
  for (int i = 0; i < system.num_modes(); ++i) {
    if (system.has_switching_constraint(i)) {
      al.modes.push_back(i);
      al.lambda.push_back(0.0);
    }
  }
  al.validate();
  return al;
}

void ALState::validate() const {
  if (!(sigma > 0.0)) throw InputError("penalty sigma must be positive");
  if (!(beta > 1.0)) throw InputError("penalty growth beta must exceed 1");
  if (!(tolerance > 0.0)) throw InputError("AL tolerance must be positive");
  if (modes.size() != lambda.size()) {
    throw InputError("one multiplier per switching constraint required");
  }
}

double ALState::multiplier(int mode) const {
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] == mode) return lambda[i];
  }
  throw InputError("mode " + std::to_string(mode) +
                   " has no switching constraint");
}

double ALState::max_abs_multiplier() const {
  double m = 0.0;
  for (double l : lambda) m = std::max(m, std::abs(l));
  return m;
}

double ALState::effective_multiplier(int mode, double g) const {
  return penalty(g, sigma, multiplier(mode), form).d1;
}

PenaltyScalar penalty(double g, double sigma, double lambda, PenaltyForm form) {
  const double c = form == PenaltyForm::kSquaredHalf ? 0.25 * sigma * sigma
                                                     : 0.5 * sigma;
  PenaltyScalar p;
  p.value = c * g * g + lambda * g;
  p.d1 = 2.0 * c * g + lambda;
  p.d2 = 2.0 * c;
  return p;
}

ALTerms al_terms(const hybrid::HybridSystem &system, const Trajectory &traj,
                 const ALState &al, bool exact_hessian) {
  ALTerms out;
  const int n = system.state_dim();
  for (size_t i = 0; i < al.modes.size(); ++i) {
    const int mode = al.modes[i];
    const Vector x = traj.phases.at(mode).states.back().head(n);
    BoundaryTerm t;
    t.mode = mode;
    t.g = system.switching_gap(mode, x);
    Vector gx;
    Matrix gxx;
    system.switching_gap_derivatives(mode, x, gx, gxx);
    const PenaltyScalar p = penalty(t.g, al.sigma, al.lambda[i], al.form);
    t.value = p.value;
    t.gradient = p.d1 * gx;
    t.hessian = p.d2 * gx * gx.transpose();
    if (exact_hessian) t.hessian += p.d1 * gxx;
    out.value += t.value;
    out.boundaries.push_back(std::move(t));
  }
  return out;
}

ALState al_update(const ALState &al,
                  const hybrid::SwitchingConstraintSet &residuals) {
  ALState next = al;
  for (const auto &r : residuals.residuals) {
    for (size_t i = 0; i < next.modes.size(); ++i) {
      if (next.modes[i] == r.mode) next.lambda[i] += al.sigma * r.value;
    }
  }
  next.sigma = al.beta * al.sigma;
  return next;
}

}  // namespace hsddp::constraints
