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

#include "hsddp/common/types.hpp"

namespace hsddp {

/// Second-order model of a per-knot cost l(x, u).
struct RunningExpansion {
  double value = 0.0;
  Vector lx;
  Vector lu;
  Matrix lxx;
  Matrix luu;
  Matrix lux;

  void set_zero(int nx, int nu) {
    value = 0.0;
    lx = Vector::Zero(nx);
    lu = Vector::Zero(nu);
    lxx = Matrix::Zero(nx, nx);
    luu = Matrix::Zero(nu, nu);
    lux = Matrix::Zero(nu, nx);
  }
};

/// Second-order model of a mode-end cost Phi(x).
struct TerminalExpansion {
  double value = 0.0;
  Vector phix;
  Matrix phixx;

  void set_zero(int nx) {
    value = 0.0;
    phix = Vector::Zero(nx);
    phixx = Matrix::Zero(nx, nx);
  }
};

}  // namespace hsddp
