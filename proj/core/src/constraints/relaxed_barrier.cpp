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

#include "hsddp/constraints/relaxed_barrier.hpp"

#include <cmath>

#include "hsddp/common/types.hpp"

namespace hsddp::constraints {

namespace {

// ((z - k delta) / ((k - 1) delta)), the base of the polynomial branch.
double poly_base(double z, double delta, int k) {
  return (z - k * delta) / ((k - 1) * delta);
}

}  // namespace

double reb_value(double z, double delta, int k) {
  if (z > delta) return -std::log(z);
  const double km1 = k - 1.0;
  return km1 / k * (std::pow(poly_base(z, delta, k), k) - 1.0) -
         std::log(delta);
}

double reb_grad(double z, double delta, int k) {
  if (z > delta) return -1.0 / z;
  return std::pow(poly_base(z, delta, k), k - 1) / delta;
}

double reb_hess(double z, double delta, int k) {
  if (z > delta) return 1.0 / (z * z);
  return std::pow(poly_base(z, delta, k), k - 2) / (delta * delta);
}

void ReBState::validate() const {
  if (!(weight > 0.0)) throw InputError("barrier weight must be positive");
  if (!(delta > 0.0)) throw InputError("barrier relaxation delta must be positive");
  if (order < 2 || order % 2 != 0) {
    throw InputError("barrier polynomial order must be an even integer >= 2");
  }
  if (!(delta_decay > 0.0 && delta_decay <= 1.0)) {
    throw InputError("delta decay factor must lie in (0, 1]");
  }
}

ReBState ReBState::decayed() const {
  ReBState next = *this;
  next.delta *= delta_decay;
  return next;
}

}  // namespace hsddp::constraints
