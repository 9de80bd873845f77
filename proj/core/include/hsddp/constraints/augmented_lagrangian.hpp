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

#include <vector>

#include "hsddp/hybrid/residuals.hpp"

namespace hsddp::constraints {

/// Penalty shape for a switching residual g:
///   kSquaredHalf: (sigma / 2)^2 g^2 + lambda g
///   kHalf:        (sigma / 2) g^2 + lambda g
enum class PenaltyForm { kSquaredHalf, kHalf };

struct ALState {
  double sigma = 5.0;
  double beta = 8.0;
  double tolerance = 1e-4;  // on the sum of squared residuals
  PenaltyForm form = PenaltyForm::kSquaredHalf;
  std::vector<int> modes;       // modes that end with a switching constraint
  std::vector<double> lambda;   // one multiplier per entry of modes

  /// Zero multipliers for every switching constraint of the system.
  static ALState initial(const hybrid::HybridSystem &system, double sigma,
                         double beta, double tolerance, PenaltyForm form);
  void validate() const;
  /// Multiplier of a mode's constraint; throws if the mode has none.
  double multiplier(int mode) const;
  double max_abs_multiplier() const;
  /// Multiplier seen by the constrained stationarity condition: the slope of
  /// the penalty term in g at the given residual.
  double effective_multiplier(int mode, double g) const;
};

/// Penalty value and its first two derivatives in g.
struct PenaltyScalar {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
PenaltyScalar penalty(double g, double sigma, double lambda, PenaltyForm form);

/// Penalty contribution charged at the end of one mode.
struct BoundaryTerm {
  int mode = 0;
  double g = 0.0;
  double value = 0.0;
  Vector gradient;  // in the system state
  Matrix hessian;
};

struct ALTerms {
  double value = 0.0;
  std::vector<BoundaryTerm> boundaries;
};

/// Penalty terms at every switching boundary of traj. With exact_hessian the
/// gap curvature term is included, otherwise only the Gauss-Newton part.
ALTerms al_terms(const hybrid::HybridSystem &system, const Trajectory &traj,
                 const ALState &al, bool exact_hessian = true);

/// sigma <- beta sigma, lambda_i <- lambda_i + sigma g_i.
ALState al_update(const ALState &al, const hybrid::SwitchingConstraintSet &residuals);

}  // namespace hsddp::constraints
