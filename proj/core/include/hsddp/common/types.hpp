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

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hsddp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised for malformed inputs: unknown identifiers, dimension mismatches,
/// non-positive durations, invalid configuration values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a linear solve is singular or badly conditioned.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what, double rcond = 0.0)
      : std::runtime_error(what), rcond_(rcond) {}

  /// Reciprocal condition estimate of the offending matrix (0 if unknown).
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

/// Symmetrize in place: A <- (A + A^T) / 2.
inline void symmetrize(Matrix &a) {
  a = 0.5 * (a + a.transpose()).eval();
}

}  // namespace hsddp
