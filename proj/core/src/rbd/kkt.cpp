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

#include "hsddp/rbd/kkt.hpp"

#include <sstream>

namespace hsddp::rbd {

KktFactorization::KktFactorization(
    const Eigen::Ref<const Matrix> &mass_matrix,
    const Eigen::Ref<const Matrix> &constraint_jacobian)
    : primal_dim_(static_cast<int>(mass_matrix.rows())),
      constraint_dim_(static_cast<int>(constraint_jacobian.rows())) {
  if (mass_matrix.cols() != primal_dim_ ||
      (constraint_dim_ > 0 && constraint_jacobian.cols() != primal_dim_)) {
    throw InputError("KKT blocks have inconsistent dimensions");
  }
  const int n = primal_dim_ + constraint_dim_;
  Matrix kkt = Matrix::Zero(n, n);
  kkt.topLeftCorner(primal_dim_, primal_dim_) = mass_matrix;
  if (constraint_dim_ > 0) {
    kkt.topRightCorner(primal_dim_, constraint_dim_) =
        -constraint_jacobian.transpose();
    kkt.bottomLeftCorner(constraint_dim_, primal_dim_) = -constraint_jacobian;
  }
  lu_.compute(kkt);
  rcond_ = lu_.rcond();
  if (!lu_.isInvertible() || !(rcond_ * kMaxConditionNumber >= 1.0)) {
    std::ostringstream msg;
    msg << "KKT matrix is singular or ill-conditioned (size " << n
        << ", reciprocal condition estimate " << rcond_ << ")";
    throw NumericalError(msg.str(), rcond_);
  }
}

Vector KktFactorization::solve(const Eigen::Ref<const Vector> &top,
                               const Eigen::Ref<const Vector> &bottom) const {
  Vector rhs(primal_dim_ + constraint_dim_);
  rhs.head(primal_dim_) = top;
  if (constraint_dim_ > 0) rhs.tail(constraint_dim_) = bottom;
  return lu_.solve(rhs);
}

Matrix KktFactorization::solve(const Eigen::Ref<const Matrix> &stacked_rhs) const {
  return lu_.solve(stacked_rhs);
}

ImpactSolution impact_velocity(const Eigen::Ref<const Matrix> &mass_matrix,
                               const Eigen::Ref<const Matrix> &jacobian,
                               const Eigen::Ref<const Vector> &v_minus,
                               double restitution) {
  const KktFactorization kkt(mass_matrix, jacobian);
  const Vector top = mass_matrix * v_minus;
  const Vector bottom = restitution * (jacobian * v_minus);
  const Vector y = kkt.solve(top, bottom);
  const int n = kkt.primal_dim();
  return {y.head(n), y.tail(kkt.constraint_dim())};
}

Matrix impact_projection(const Eigen::Ref<const Matrix> &mass_matrix,
                         const Eigen::Ref<const Matrix> &jacobian) {
  const Eigen::LLT<Matrix> h_llt(mass_matrix);
  if (h_llt.info() != Eigen::Success) {
    throw NumericalError("mass matrix is not positive definite");
  }
  const Matrix hinv_jt = h_llt.solve(jacobian.transpose());
  const Matrix gram = jacobian * hinv_jt;
  const Eigen::FullPivLU<Matrix> gram_lu(gram);
  if (!(gram_lu.rcond() * kMaxConditionNumber >= 1.0)) {
    throw NumericalError("impact Gram matrix is singular", gram_lu.rcond());
  }
  const int n = static_cast<int>(mass_matrix.rows());
  return Matrix::Identity(n, n) - hinv_jt * gram_lu.solve(jacobian);
}

}  // namespace hsddp::rbd
