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

#include "hsddp/ddp/expansion.hpp"

#include <Eigen/Cholesky>

namespace hsddp::ddp {

QExpansion q_expansion(const RunningExpansion &cost, const Matrix &fx,
                       const Matrix &fu, const ValueExpansion &next,
                       double reg) {
  QExpansion q;
  const Matrix vxx_fx = next.vxx * fx;
  const Matrix vxx_fu = next.vxx * fu;
  q.qx = cost.lx + fx.transpose() * next.vx;
  q.qu = cost.lu + fu.transpose() * next.vx;
  q.qxx = cost.lxx + fx.transpose() * vxx_fx;
  q.quu = cost.luu + fu.transpose() * vxx_fu;
  q.qux = cost.lux + fu.transpose() * vxx_fx;
  symmetrize(q.qxx);
  symmetrize(q.quu);
  q.reg = reg;
  return q;
}

std::optional<PolicyUpdate> policy_and_value_update(const QExpansion &q,
                                                    const ValueExpansion &next) {
  Matrix quu_reg = q.quu;
  quu_reg.diagonal().array() += q.reg;
  Eigen::LLT<Matrix> llt(quu_reg);
  if (llt.info() != Eigen::Success) return std::nullopt;

  PolicyUpdate out;
  PolicyEntry &p = out.policy;
  p.kappa = -llt.solve(q.qu);
  p.gain = -llt.solve(q.qux);
  if (!p.kappa.allFinite() || !p.gain.allFinite()) return std::nullopt;

  const Matrix kt_quu = p.gain.transpose() * q.quu;
  ValueExpansion &v = out.value;
  v.dv1 = next.dv1 + p.kappa.dot(q.qu);
  v.dv2 = next.dv2 + p.kappa.dot(q.quu * p.kappa);
  v.vx = q.qx + kt_quu * p.kappa + p.gain.transpose() * q.qu +
         q.qux.transpose() * p.kappa;
  v.vxx = q.qxx + kt_quu * p.gain + p.gain.transpose() * q.qux +
          q.qux.transpose() * p.gain;
  symmetrize(v.vxx);
  return out;
}

ValueExpansion impact_value_update(const ValueExpansion &post, const Matrix &px,
                                   const TerminalExpansion &phi) {
  ValueExpansion v;
  v.dv1 = post.dv1;
  v.dv2 = post.dv2;
  v.vx = phi.phix + px.transpose() * post.vx;
  v.vxx = phi.phixx + px.transpose() * post.vxx * px;
  symmetrize(v.vxx);
  return v;
}

}  // namespace hsddp::ddp
