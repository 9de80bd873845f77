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

#include "hsddp/sto/sensitivity.hpp"

#include <limits>

#include "hsddp/common/format.hpp"

namespace hsddp::sto {

std::vector<SensitivityRow> step_sensitivity_sweep(
    const ddp::OptimalControlProblem &problem, const SensitivityInput &input,
    const std::vector<double> &steps) {
  const int nz = static_cast<int>(input.dz.size());
  if (input.x0.size() != problem.state_dim() || nz > input.x0.size()) {
    throw InputError("sensitivity input has inconsistent dimensions");
  }
  const Vector vz = input.value.vx.tail(nz);
  const Matrix vzz = input.value.vxx.bottomRightCorner(nz, nz);
  const double lin_z = vz.dot(input.dz);
  const double quad_z = input.dz.dot(vzz * input.dz);

  struct Curve {
    const char *name;
    bool control;
    bool timing;
  };
  const Curve curves[] = {{"timing", false, true},
                          {"control", true, false},
                          {"both", true, true}};
  std::vector<SensitivityRow> rows;
  for (const Curve &c : curves) {
    for (double s : steps) {
      SensitivityRow r;
      r.curve = c.name;
      r.s = s;
      r.eps = c.control ? s : 0.0;
      r.eps_z = c.timing ? s : 0.0;
      r.predicted = input.value.expected_change(r.eps) + r.eps_z * lin_z +
                    0.5 * r.eps_z * r.eps_z * quad_z;
      Vector x0 = input.x0;
      x0.tail(nz) += r.eps_z * input.dz;
      auto e = ddp::forward_sweep(problem, input.nominal, input.policy, r.eps, x0);
      r.actual = e ? e->cost - input.cost : std::numeric_limits<double>::infinity();
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<double> default_step_grid() {
  std::vector<double> s;
  for (int i = 0; i <= 20; ++i) s.push_back(i / 20.0);
  return s;
}

double largest_decreasing_step(const std::vector<SensitivityRow> &rows,
                               const std::string &curve) {
  double best = 0.0;
  for (const auto &r : rows) {
    if (r.curve == curve && r.actual < 0.0 && r.s > best) best = r.s;
  }
  return best;
}

void write_sensitivity_csv(std::ostream &os,
                           const std::vector<SensitivityRow> &rows) {
  os << "curve,s,eps,eps_z,kind,cost_change\n";
  for (const auto &r : rows) {
    const std::string head = r.curve + ',' + format_double(r.s) + ',' +
                             format_double(r.eps) + ',' + format_double(r.eps_z);
    os << head << ",predicted," << format_double(r.predicted) << '\n';
    os << head << ",actual," << format_double(r.actual) << '\n';
  }
}

}  // namespace hsddp::sto
