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

#include "hsddp/rbd/contact_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/AutoDiff>

#include "hsddp/rbd/kkt.hpp"
#include "hsddp/rbd/planar_chain.hpp"

namespace hsddp::rbd {

namespace {

using Derivatives = Eigen::Matrix<double, kStateDim, 1>;
using AD = Eigen::AutoDiffScalar<Derivatives>;
using ADCoordinates = Eigen::Matrix<AD, kNumCoordinates, 1>;

void check_foot(Foot foot) {
  const int id = static_cast<int>(foot);
  if (id != 0 && id != 1) {
    throw InputError("unknown foot identifier " + std::to_string(id));
  }
}

void seed(const State &x, ADCoordinates &q, ADCoordinates &v) {
  for (int i = 0; i < kNumCoordinates; ++i) {
    q(i) = AD(x.q(i), kStateDim, i);
    v(i) = AD(x.v(i), kStateDim, kNumCoordinates + i);
  }
}

// Stacked 2-row contact Jacobians and Jdot v for a contact set.
template <typename T, typename QVec, typename VVec>
void contact_terms(const RobotModel &model, const ContactSet &contacts,
                   const QVec &q, const VVec &v,
                   Eigen::Matrix<T, Eigen::Dynamic, kNumCoordinates> &jac,
                   Eigen::Matrix<T, Eigen::Dynamic, 1> &bias) {
  const int m = 2 * contacts.size();
  jac.resize(m, kNumCoordinates);
  bias.resize(m);
  for (int c = 0; c < contacts.size(); ++c) {
    const auto pk = detail::evaluate_point<T>(
        detail::foot_point(model, contacts.feet()[c]), q, v);
    jac.template middleRows<2>(2 * c) = pk.jacobian;
    bias.template segment<2>(2 * c) = pk.bias;
  }
}

ContactSolution unpack(const Vector &y, int contacts) {
  ContactSolution out;
  out.qdd = y.head<kNumCoordinates>();
  out.forces.resize(contacts);
  for (int c = 0; c < contacts; ++c) {
    out.forces[c].tangential = y(kNumCoordinates + 2 * c);
    out.forces[c].normal = y(kNumCoordinates + 2 * c + 1);
  }
  return out;
}

}  // namespace

StateVector State::stacked() const {
  StateVector x;
  x << q, v;
  return x;
}

State State::from_stacked(const Eigen::Ref<const Vector> &x) {
  if (x.size() != kStateDim) {
    throw InputError("state vector must have " + std::to_string(kStateDim) +
                     " entries, got " + std::to_string(x.size()));
  }
  State s;
  s.q = x.head<kNumCoordinates>();
  s.v = x.tail<kNumCoordinates>();
  return s;
}

ContactSet::ContactSet(std::initializer_list<Foot> feet)
    : ContactSet(std::vector<Foot>(feet)) {}

ContactSet::ContactSet(std::vector<Foot> feet) : feet_(std::move(feet)) {
  for (std::size_t i = 0; i < feet_.size(); ++i) {
    check_foot(feet_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (feet_[i] == feet_[j]) {
        throw InputError("duplicate contact '" + to_string(feet_[i]) + "'");
      }
    }
  }
}

bool ContactSet::contains(Foot foot) const {
  return std::find(feet_.begin(), feet_.end(), foot) != feet_.end();
}

Vector ContactSolution::stacked_forces() const {
  Vector out(2 * forces.size());
  for (std::size_t c = 0; c < forces.size(); ++c) {
    out(2 * c) = forces[c].tangential;
    out(2 * c + 1) = forces[c].normal;
  }
  return out;
}

Eigen::Vector2d foot_position(const RobotModel &model, const Coordinates &q,
                              Foot foot) {
  check_foot(foot);
  const Coordinates v = Coordinates::Zero();
  return detail::evaluate_point<double>(detail::foot_point(model, foot), q, v)
      .position;
}

Eigen::Vector2d hip_position(const RobotModel &model, const Coordinates &q,
                             Foot foot) {
  check_foot(foot);
  const Coordinates v = Coordinates::Zero();
  return detail::evaluate_point<double>(detail::hip_point(model, foot), q, v)
      .position;
}

Eigen::Vector2d knee_position(const RobotModel &model, const Coordinates &q,
                              Foot foot) {
  check_foot(foot);
  const Coordinates v = Coordinates::Zero();
  return detail::evaluate_point<double>(detail::knee_point(model, foot), q, v)
      .position;
}

Eigen::Matrix<double, 2, kNumCoordinates> foot_jacobian(
    const RobotModel &model, const Coordinates &q, Foot foot) {
  check_foot(foot);
  const Coordinates v = Coordinates::Zero();
  return detail::evaluate_point<double>(detail::foot_point(model, foot), q, v)
      .jacobian;
}

double gap(const RobotModel &model, const Coordinates &q, Foot foot) {
  return foot_position(model, q, foot)(1);
}

double gap_rate(const RobotModel &model, const State &x, Foot foot) {
  return foot_jacobian(model, x.q, foot).row(1).dot(x.v);
}

GapDerivatives gap_derivatives(const RobotModel &model, const Coordinates &q,
                               Foot foot) {
  check_foot(foot);
  const detail::ChainPoint point = detail::foot_point(model, foot);
  const Coordinates v = Coordinates::Zero();
  const auto pk = detail::evaluate_point<double>(point, q, v);
  GapDerivatives out;
  out.value = pk.position(1);
  out.gradient = pk.jacobian.row(1).transpose();
  out.hessian.setZero();
  for (int t = 0; t < point.count; ++t) {
    const detail::ChainTerm &term = point.terms[t];
    double angle = 0.0;
    for (int j = 0; j < 5; ++j) {
      if (term.angle_mask & (1u << j)) angle += q(kPitch + j);
    }
    const double pz = std::sin(angle) * term.rx + std::cos(angle) * term.rz;
    for (int j = 0; j < 5; ++j) {
      if (!(term.angle_mask & (1u << j))) continue;
      for (int k = 0; k < 5; ++k) {
        if (term.angle_mask & (1u << k)) out.hessian(kPitch + j, kPitch + k) -= pz;
      }
    }
  }
  return out;
}

Eigen::Matrix<double, kNumCoordinates, kNumCoordinates> mass_matrix(
    const RobotModel &model, const Coordinates &q) {
  const Coordinates v = Coordinates::Zero();
  return detail::model_terms<double>(model, q, v).mass_matrix;
}

Coordinates bias_forces(const RobotModel &model, const State &x) {
  return detail::model_terms<double>(model, x.q, x.v).bias;
}

double kinetic_energy(const RobotModel &model, const State &x) {
  return 0.5 * x.v.dot(mass_matrix(model, x.q) * x.v);
}

ContactSolution contact_dynamics(const RobotModel &model, const State &x,
                                 const Torques &u, const ContactSet &contacts) {
  const auto terms = detail::model_terms<double>(model, x.q, x.v);
  Eigen::Matrix<double, Eigen::Dynamic, kNumCoordinates> jac;
  Eigen::Matrix<double, Eigen::Dynamic, 1> jdv;
  contact_terms<double>(model, contacts, x.q, x.v, jac, jdv);

  const KktFactorization kkt(terms.mass_matrix, jac);
  const Coordinates top = model.selection().transpose() * u - terms.bias;
  return unpack(kkt.solve(top, jdv), contacts.size());
}

State integrate_step(const RobotModel &model, const State &x,
                     const Torques &u, const ContactSet &contacts, double h) {
  if (!(h > 0.0)) throw InputError("integration step must be positive");
  const ContactSolution sol = contact_dynamics(model, x, u, contacts);
  State next;
  next.q = x.q + h * x.v;
  next.v = x.v + h * sol.qdd;
  return next;
}

FlowDerivatives flow_derivatives(const RobotModel &model, const State &x,
                                 const Torques &u, const ContactSet &contacts) {
  ADCoordinates q_ad;
  ADCoordinates v_ad;
  seed(x, q_ad, v_ad);
  const auto terms = detail::model_terms<AD>(model, q_ad, v_ad);
  Eigen::Matrix<AD, Eigen::Dynamic, kNumCoordinates> jac_ad;
  Eigen::Matrix<AD, Eigen::Dynamic, 1> jdv_ad;
  contact_terms<AD>(model, contacts, q_ad, v_ad, jac_ad, jdv_ad);

  const int n = kNumCoordinates;
  const int m = 2 * contacts.size();
  Matrix h(n, n);
  Coordinates bias;
  Matrix jac(m, n);
  Vector jdv(m);
  for (int i = 0; i < n; ++i) {
    bias(i) = terms.bias(i).value();
    for (int j = 0; j < n; ++j) h(i, j) = terms.mass_matrix(i, j).value();
  }
  for (int r = 0; r < m; ++r) {
    jdv(r) = jdv_ad(r).value();
    for (int j = 0; j < n; ++j) jac(r, j) = jac_ad(r, j).value();
  }

  const KktFactorization kkt(h, jac);
  const Coordinates top = model.selection().transpose() * u - bias;
  const Vector y = kkt.solve(top, jdv);
  const Coordinates qdd = y.head<kNumCoordinates>();
  const Vector lambda = y.tail(m);

  // K dy = db - dK y, one column per state direction.
  Matrix rhs(n + m, kStateDim);
  for (int d = 0; d < kStateDim; ++d) {
    for (int a = 0; a < n; ++a) {
      double acc = -terms.bias(a).derivatives()(d);
      for (int b = 0; b < n; ++b) {
        acc -= terms.mass_matrix(a, b).derivatives()(d) * qdd(b);
      }
      for (int r = 0; r < m; ++r) {
        acc += jac_ad(r, a).derivatives()(d) * lambda(r);
      }
      rhs(a, d) = acc;
    }
    for (int r = 0; r < m; ++r) {
      double acc = jdv_ad(r).derivatives()(d);
      for (int b = 0; b < n; ++b) acc += jac_ad(r, b).derivatives()(d) * qdd(b);
      rhs(n + r, d) = acc;
    }
  }
  const Matrix dy_dx = kkt.solve(rhs);

  Matrix rhs_u = Matrix::Zero(n + m, kNumJoints);
  rhs_u.topRows(n) = model.selection().transpose();
  const Matrix dy_du = kkt.solve(rhs_u);

  FlowDerivatives out;
  out.solution = unpack(y, contacts.size());
  out.qdd_x = dy_dx.topRows(n);
  out.qdd_u = dy_du.topRows(n);
  out.forces_x = dy_dx.bottomRows(m);
  out.forces_u = dy_du.bottomRows(m);
  return out;
}

StepJacobians linearize_step(const RobotModel &model, const State &x,
                             const Torques &u, const ContactSet &contacts,
                             double h) {
  if (!(h > 0.0)) throw InputError("integration step must be positive");
  const FlowDerivatives d = flow_derivatives(model, x, u, contacts);
  StepJacobians out;
  out.fx.setIdentity();
  out.fx.topRightCorner<kNumCoordinates, kNumCoordinates>() +=
      h * Eigen::Matrix<double, kNumCoordinates, kNumCoordinates>::Identity();
  out.fx.bottomRows<kNumCoordinates>() += h * d.qdd_x;
  out.fu.setZero();
  out.fu.bottomRows<kNumCoordinates>() = h * d.qdd_u;
  return out;
}

ImpactResult impact_map(const RobotModel &model, const State &x_minus,
                        Foot foot) {
  check_foot(foot);
  const Coordinates v = Coordinates::Zero();
  const auto h = detail::model_terms<double>(model, x_minus.q, v).mass_matrix;
  const auto pk =
      detail::evaluate_point<double>(detail::foot_point(model, foot), x_minus.q, v);
  const ImpactSolution sol =
      impact_velocity(h, pk.jacobian, x_minus.v, model.restitution());
  ImpactResult out;
  out.post.q = x_minus.q;
  out.post.v = sol.velocity;
  out.impulse = sol.impulse;
  return out;
}

Eigen::Matrix<double, kStateDim, kStateDim> reset_jacobian(
    const RobotModel &model, const State &x_minus, Foot foot) {
  check_foot(foot);
  ADCoordinates q_ad;
  ADCoordinates v_ad;
  seed(x_minus, q_ad, v_ad);
  ADCoordinates zero_v;
  for (int i = 0; i < kNumCoordinates; ++i) {
    zero_v(i) = AD(0.0);
    zero_v(i).derivatives().setZero();
  }
  const auto terms = detail::model_terms<AD>(model, q_ad, zero_v);
  const auto pk = detail::evaluate_point<AD>(detail::foot_point(model, foot),
                                             q_ad, zero_v);

  const int n = kNumCoordinates;
  Matrix h(n, n);
  Matrix jac(2, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = terms.mass_matrix(i, j).value();
    jac(0, i) = pk.jacobian(0, i).value();
    jac(1, i) = pk.jacobian(1, i).value();
  }
  const double e = model.restitution();
  const KktFactorization kkt(h, jac);
  const Vector vm = x_minus.v;
  const Vector y = kkt.solve(h * vm, e * (jac * vm));
  const Vector vp = y.head(n);
  const Vector impulse = y.tail(2);

  Matrix rhs(n + 2, 2 * n);
  for (int d = 0; d < n; ++d) {
    for (int a = 0; a < n; ++a) {
      double acc = 0.0;
      for (int b = 0; b < n; ++b) {
        acc += terms.mass_matrix(a, b).derivatives()(d) * (vm(b) - vp(b));
      }
      for (int r = 0; r < 2; ++r) {
        acc += pk.jacobian(r, a).derivatives()(d) * impulse(r);
      }
      rhs(a, d) = acc;
    }
    for (int r = 0; r < 2; ++r) {
      double acc = 0.0;
      for (int b = 0; b < n; ++b) {
        acc += pk.jacobian(r, b).derivatives()(d) * (e * vm(b) + vp(b));
      }
      rhs(n + r, d) = acc;
    }
  }
  rhs.block(0, n, n, n) = h;
  rhs.block(n, n, 2, n) = e * jac;
  const Matrix dy = kkt.solve(rhs);

  Eigen::Matrix<double, kStateDim, kStateDim> out;
  out.setZero();
  out.topLeftCorner<kNumCoordinates, kNumCoordinates>().setIdentity();
  out.bottomRows<kNumCoordinates>() = dy.topRows(n);
  return out;
}

}  // namespace hsddp::rbd
