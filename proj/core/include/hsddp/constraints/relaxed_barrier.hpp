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

namespace hsddp::constraints {

/// Relaxed log barrier: -log z above delta, a degree-k polynomial below it.
/// Defined on the whole real line. k must be even (odd k breaks the slope
/// match at z = delta).
double reb_value(double z, double delta, int k = 2);
double reb_grad(double z, double delta, int k = 2);
double reb_hess(double z, double delta, int k = 2);

struct ReBState {
  double weight = 0.01;  // epsilon_B
  double delta = 0.5;
  int order = 2;
  double delta_decay = 0.2;

  /// Throws InputError unless weight > 0, delta > 0 and order is even >= 2.
  void validate() const;
  ReBState decayed() const;
};

}  // namespace hsddp::constraints
