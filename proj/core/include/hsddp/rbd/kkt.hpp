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

#include <Eigen/Dense>

#include "hsddp/common/types.hpp"

namespace hsddp::rbd {

/// Condition-number cap for every KKT and Gram solve.
inline constexpr double kMaxConditionNumber = 1e12;

/// LU factorization of the contact KKT matrix
///
///     [ H   -J^T ]
///     [ -J   0   ]
///
/// With an empty J it degenerates to H. Throws NumericalError when the
/// reciprocal condition estimate falls below 1 / kMaxConditionNumber.
class KktFactorization {
 public:
  KktFactorization(const Eigen::Ref<const Matrix> &mass_matrix,
                   const Eigen::Ref<const Matrix> &constraint_jacobian);

  int primal_dim() const { return primal_dim_; }
  int constraint_dim() const { return constraint_dim_; }
  double rcond() const { return rcond_; }

  /// Solves for the stacked [primal; multiplier] vector.
  Vector solve(const Eigen::Ref<const Vector> &top,
               const Eigen::Ref<const Vector> &bottom) const;
  /// Solves with a stacked right-hand side (primal_dim + constraint_dim rows).
  Matrix solve(const Eigen::Ref<const Matrix> &stacked_rhs) const;

 private:
  int primal_dim_;
  int constraint_dim_;
  double rcond_;
  Eigen::FullPivLU<Matrix> lu_;
};

struct ImpactSolution {
  Vector velocity;  // post-impact generalized velocity
  Vector impulse;   // contact impulse, one entry per constraint row
};

/// Velocity reset of a rigid impact with restitution e:
/// H (v+ - v-) = J^T impulse,  J v+ = -e J v-.
ImpactSolution impact_velocity(const Eigen::Ref<const Matrix> &mass_matrix,
                               const Eigen::Ref<const Matrix> &jacobian,
                               const Eigen::Ref<const Vector> &v_minus,
                               double restitution);

/// The e = 0 velocity projection I - H^-1 J^T (J H^-1 J^T)^-1 J.
Matrix impact_projection(const Eigen::Ref<const Matrix> &mass_matrix,
                         const Eigen::Ref<const Matrix> &jacobian);

}  // namespace hsddp::rbd
