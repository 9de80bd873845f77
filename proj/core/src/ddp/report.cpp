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

#include "hsddp/ddp/report.hpp"

#include "hsddp/common/format.hpp"

namespace hsddp::ddp {

namespace {

std::string fmt(double v) { return format_double(v); }

}  // namespace

int SolveReport::accepted_steps() const {
  int n = 0;
  for (const auto &it : iterations) n += it.accepted ? 1 : 0;
  return n;
}

void write_iteration_csv(std::ostream &os, const SolveReport &report,
                         bool header) {
  if (header) {
    os << "iteration,cost,base_cost,violation,expected,actual,reg,step,"
          "backtracks,accepted\n";
  }
  for (const auto &it : report.iterations) {
    os << it.iteration << ',' << fmt(it.cost) << ',' << fmt(it.base_cost)
       << ',' << fmt(it.violation) << ',' << fmt(it.expected) << ','
       << fmt(it.actual) << ',' << fmt(it.reg) << ',' << fmt(it.step) << ','
       << it.backtracks << ',' << (it.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace hsddp::ddp
