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

#include "hsddp/io/artifacts.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hsddp/common/format.hpp"
#include "hsddp/hybrid/residuals.hpp"
#include "hsddp/io/run_config.hpp"
#include "json.hpp"

namespace hsddp::io {

using nlohmann::json;

namespace {

void put_vector(std::ostream &os, const Vector &v, int n) {
  for (int i = 0; i < n; ++i) os << ',' << format_double(v(i));
}

// [front x, front z, back x, back z] from the stacked per-contact forces.
Eigen::Vector4d foot_forces(const hybrid::Mode &mode, const Vector &aux) {
  Eigen::Vector4d f = Eigen::Vector4d::Zero();
  const auto &feet = mode.contacts.feet();
  for (size_t c = 0; c < feet.size(); ++c) {
    const int slot = feet[c] == rbd::Foot::kFront ? 0 : 2;
    f(slot) = aux(2 * c);
    f(slot + 1) = aux(2 * c + 1);
  }
  return f;
}

json vector_json(const Vector &v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vector_from(const json &a) {
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

}  // namespace

void write_trajectory_csv(std::ostream &os, const hybrid::Discretization &disc,
                          const hybrid::RobotHybridSystem &system,
                          const Trajectory &traj) {
  os << "row,mode,kind,knot,t";
  for (int i = 0; i < rbd::kNumCoordinates; ++i) os << ",q" << i;
  for (int i = 0; i < rbd::kNumCoordinates; ++i) os << ",v" << i;
  for (int i = 0; i < rbd::kNumJoints; ++i) os << ",u" << i;
  os << ",lambda_front_x,lambda_front_z,lambda_back_x,lambda_back_z\n";
  const int nq = rbd::kNumCoordinates;
  double t = 0.0;
  for (const auto &p : traj.phases) {
    const hybrid::Mode &mode = system.mode(p.phase);
    const std::string prefix =
        ',' + std::to_string(p.phase) + ',' + hybrid::to_string(mode.kind) + ',';
    for (int k = 0; k <= p.knots(); ++k) {
      const Vector &x = p.states[k];
      const bool end = k == p.knots();
      os << (end ? "mode_end" : "knot") << prefix << k << ',' << format_double(t);
      put_vector(os, x.head(nq), nq);
      put_vector(os, x.segment(nq, nq), nq);
      if (end) {
        os << ",,,,,,,,\n";
        break;
      }
      put_vector(os, p.controls[k], rbd::kNumJoints);
      put_vector(os, foot_forces(mode, p.aux[k]), 4);
      os << '\n';
      t += disc.knot_duration(p.phase, x);
    }
  }
}

TrajectoryMetrics trajectory_metrics(const hybrid::Discretization &disc,
                                     const hybrid::RobotHybridSystem &system,
                                     const Trajectory &traj) {
  TrajectoryMetrics m;
  m.min_normal_force = std::numeric_limits<double>::infinity();
  m.max_friction_excess = -std::numeric_limits<double>::infinity();
  const double mu = system.model().friction();
  for (const auto &p : traj.phases) {
    const hybrid::Mode &mode = system.mode(p.phase);
    for (int k = 0; k < p.knots(); ++k) {
      m.total_time += disc.knot_duration(p.phase, p.states[k]);
      m.max_abs_torque = std::max(m.max_abs_torque, p.controls[k].cwiseAbs().maxCoeff());
      for (int c = 0; c < mode.contacts.size(); ++c) {
        const double lx = p.aux[k](2 * c);
        const double lz = p.aux[k](2 * c + 1);
        m.min_normal_force = std::min(m.min_normal_force, lz);
        m.max_friction_excess = std::max(m.max_friction_excess, std::abs(lx) - mu * lz);
      }
    }
  }
  m.min_margin = hybrid::min_margin(hybrid::inequality_residuals(system, traj));
  const auto g = hybrid::switching_residuals(system, traj);
  m.violation = g.sum_squares();
  m.max_abs_residual = g.max_abs();
  return m;
}

std::string solution_to_json(const SavedSolution &s) {
  json j;
  j["kind"] = s.kind;
  j["cycles"] = s.cycles;
  j["converged"] = s.converged;
  j["durations"] = vector_json(s.durations);
  json u = json::array();
  for (const auto &c : s.controls) u.push_back(vector_json(c));
  j["controls"] = u;
  if (s.al) {
    j["al"] = {{"sigma", s.al->sigma},
               {"beta", s.al->beta},
               {"tolerance", s.al->tolerance},
               {"penalty_form", to_string(s.al->form)},
               {"modes", s.al->modes},
               {"lambda", s.al->lambda}};
  } else {
    j["al"] = nullptr;
  }
  if (s.reb) {
    j["reb"] = {{"weight", s.reb->weight},
                {"delta", s.reb->delta},
                {"order", s.reb->order},
                {"delta_decay", s.reb->delta_decay}};
  } else {
    j["reb"] = nullptr;
  }
  j["config"] = json::parse(s.config_json);
  return j.dump(2) + "\n";
}

SavedSolution load_solution(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read solution file " + path);
  SavedSolution s;
  try {
    const json j = json::parse(in);
    s.kind = j.at("kind").get<std::string>();
    s.cycles = j.at("cycles").get<int>();
    s.converged = j.at("converged").get<bool>();
    s.durations = vector_from(j.at("durations"));
    for (const auto &c : j.at("controls")) s.controls.push_back(vector_from(c));
    if (!j.at("al").is_null()) {
      const json &a = j.at("al");
      constraints::ALState al;
      al.sigma = a.at("sigma").get<double>();
      al.beta = a.at("beta").get<double>();
      al.tolerance = a.at("tolerance").get<double>();
      al.form = a.at("penalty_form").get<std::string>() == "half"
                    ? constraints::PenaltyForm::kHalf
                    : constraints::PenaltyForm::kSquaredHalf;
      al.modes = a.at("modes").get<std::vector<int>>();
      al.lambda = a.at("lambda").get<std::vector<double>>();
      s.al = al;
    }
    if (!j.at("reb").is_null()) {
      const json &b = j.at("reb");
      constraints::ReBState reb;
      reb.weight = b.at("weight").get<double>();
      reb.delta = b.at("delta").get<double>();
      reb.order = b.at("order").get<int>();
      reb.delta_decay = b.at("delta_decay").get<double>();
      s.reb = reb;
    }
    s.config_json = j.at("config").dump();
  } catch (const json::exception &e) {
    throw MissingInputError("malformed solution file " + path + ": " + e.what());
  }
  return s;
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace hsddp::io
