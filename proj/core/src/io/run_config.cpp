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

#include "hsddp/io/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hsddp::io {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Section {
 public:
  Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) {
        throw ConfigError("unknown key " + path_ + "." + it.key());
      }
    }
  }

  bool has(const std::string &key) {
    used_.insert(key);
    return j_.contains(key);
  }
  Section sub(const std::string &key) {
    used_.insert(key);
    return Section(j_.at(key), path_ + "." + key);
  }
  const json &raw(const std::string &key) {
    used_.insert(key);
    return j_.at(key);
  }
  std::string where(const std::string &key) const { return path_ + "." + key; }

  void read(const std::string &key, double &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_number()) throw ConfigError(where(key) + " must be a number");
    v = x.get<double>();
  }
  void read(const std::string &key, int &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    v = x.get<int>();
  }
  void read(const std::string &key, unsigned &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_number_unsigned()) {
      throw ConfigError(where(key) + " must be a nonnegative integer");
    }
    v = x.get<unsigned>();
  }
  void read(const std::string &key, bool &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_boolean()) throw ConfigError(where(key) + " must be true or false");
    v = x.get<bool>();
  }
  void read(const std::string &key, std::string &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_string()) throw ConfigError(where(key) + " must be a string");
    v = x.get<std::string>();
  }
  void read(const std::string &key, std::array<double, 4> &v) {
    if (!has(key)) return;
    const json &x = j_.at(key);
    if (!x.is_array() || x.size() != 4) {
      throw ConfigError(where(key) + " must be an array of 4 numbers");
    }
    for (int i = 0; i < 4; ++i) {
      if (!x[i].is_number()) throw ConfigError(where(key) + " must hold numbers");
      v[i] = x[i].get<double>();
    }
  }

 private:
  const json &j_;
  std::string path_;
  std::set<std::string> used_;
};

void read_link(Section s, rbd::LinkParameters &l) {
  s.read("mass", l.mass);
  s.read("inertia", l.inertia);
  s.read("length", l.length);
  s.read("com_offset", l.com_offset);
}

void read_posture(Section s, bounding::Posture &p) {
  s.read("height", p.height);
  s.read("pitch", p.pitch);
  s.read("joints", p.joints);
}

json link_json(const rbd::LinkParameters &l) {
  return {{"mass", l.mass}, {"inertia", l.inertia}, {"length", l.length},
          {"com_offset", l.com_offset}};
}

json posture_json(const bounding::Posture &p) {
  return {{"height", p.height}, {"pitch", p.pitch}, {"joints", p.joints}};
}

constraints::PenaltyForm penalty_form_from(const std::string &s) {
  if (s == "squared_half") return constraints::PenaltyForm::kSquaredHalf;
  if (s == "half") return constraints::PenaltyForm::kHalf;
  throw ConfigError("al.penalty_form must be \"squared_half\" or \"half\"");
}

constraints::HessianMode hessian_from(const std::string &s) {
  if (s == "gauss_newton") return constraints::HessianMode::kGaussNewton;
  if (s == "exact") return constraints::HessianMode::kExact;
  throw ConfigError("constraint_hessian must be \"gauss_newton\" or \"exact\"");
}

void parse_into(const json &root, RunConfig &c) {
  Section top(root, "config");
  if (top.has("robot")) {
    Section r = top.sub("robot");
    if (r.has("body")) read_link(r.sub("body"), c.robot.body);
    if (r.has("upper")) read_link(r.sub("upper"), c.robot.upper);
    if (r.has("lower")) read_link(r.sub("lower"), c.robot.lower);
    r.read("gravity", c.robot.gravity);
    r.read("torque_limit", c.robot.torque_limit);
    r.read("friction", c.robot.friction);
    r.read("restitution", c.robot.restitution);
  }
  if (top.has("schedule")) {
    Section s = top.sub("schedule");
    s.read("cycles", c.cycles);
    s.read("back_stance", c.bounding.back_stance);
    s.read("flight", c.bounding.flight);
    s.read("front_stance", c.bounding.front_stance);
    s.read("h", c.bounding.h);
    s.read("knots_per_mode", c.bounding.knots_per_mode);
    if (s.has("modes")) {
      const json &m = s.raw("modes");
      if (!m.is_array() || m.empty()) {
        throw ConfigError("config.schedule.modes must be a non-empty array");
      }
      std::vector<ModeSpec> modes;
      for (size_t i = 0; i < m.size(); ++i) {
        Section e(m[i], "config.schedule.modes[" + std::to_string(i) + "]");
        std::string kind;
        ModeSpec spec;
        if (!e.has("kind") || !e.has("duration")) {
          throw ConfigError("every mode needs \"kind\" and \"duration\"");
        }
        e.read("kind", kind);
        e.read("duration", spec.duration);
        try {
          spec.kind = hybrid::mode_kind_from_string(kind);
        } catch (const InputError &err) {
          throw ConfigError(err.what());
        }
        modes.push_back(spec);
      }
      c.modes = modes;
    }
  }
  if (top.has("cost")) {
    Section s = top.sub("cost");
    auto &w = c.bounding.weights;
    s.read("forward_speed", w.forward_speed);
    s.read("height", w.height);
    s.read("pitch", w.pitch);
    s.read("joints", w.joints);
    s.read("body_velocity", w.body_velocity);
    s.read("joint_velocity", w.joint_velocity);
    s.read("control", w.control);
    s.read("terminal_scale", w.terminal_scale);
    s.read("desired_speed", c.bounding.references.forward_speed);
    if (s.has("references")) {
      Section r = s.sub("references");
      auto &refs = c.bounding.references;
      if (r.has("back_stance")) read_posture(r.sub("back_stance"), refs.back_stance);
      if (r.has("flight_1")) read_posture(r.sub("flight_1"), refs.flight_1);
      if (r.has("front_stance")) read_posture(r.sub("front_stance"), refs.front_stance);
      if (r.has("flight_2")) read_posture(r.sub("flight_2"), refs.flight_2);
    }
  }
  if (top.has("initial_state")) {
    Section s = top.sub("initial_state");
    s.read("joints", c.bounding.initial_joints);
    s.read("pitch", c.bounding.initial_pitch);
    s.read("speed", c.bounding.initial_speed);
  }
  if (top.has("warm_start")) {
    Section s = top.sub("warm_start");
    auto &w = c.bounding.warm_start;
    s.read("kp", w.kp);
    s.read("kd", w.kd);
    s.read("stiffness", w.stiffness);
    s.read("damping", w.damping);
    s.read("rest_length", w.rest_length);
    s.read("pitch_kp", w.pitch_kp);
    s.read("pitch_kd", w.pitch_kd);
  }
  if (top.has("ddp")) {
    Section s = top.sub("ddp");
    s.read("max_iterations", c.ddp.max_iterations);
    s.read("cost_tolerance", c.ddp.cost_tolerance);
    s.read("step_factor", c.ddp.step_factor);
    s.read("max_backtracks", c.ddp.max_backtracks);
    s.read("reg_init", c.ddp.reg_init);
    s.read("reg_min", c.ddp.reg_min);
    s.read("reg_max", c.ddp.reg_max);
    s.read("reg_increase", c.ddp.reg_increase);
    s.read("reg_decrease", c.ddp.reg_decrease);
  }
  if (top.has("al")) {
    Section s = top.sub("al");
    s.read("enabled", c.outer.use_al);
    s.read("sigma", c.outer.sigma);
    s.read("beta", c.outer.beta);
    s.read("tolerance", c.outer.al_tolerance);
    s.read("max_iterations", c.outer.max_al_iterations);
    std::string form = to_string(c.outer.form);
    s.read("penalty_form", form);
    c.outer.form = penalty_form_from(form);
  }
  if (top.has("reb")) {
    Section s = top.sub("reb");
    s.read("enabled", c.outer.use_reb);
    s.read("weight", c.outer.reb.weight);
    s.read("delta", c.outer.reb.delta);
    s.read("order", c.outer.reb.order);
    s.read("delta_decay", c.outer.reb.delta_decay);
  }
  {
    std::string mode = to_string(c.outer.hessian);
    top.read("constraint_hessian", mode);
    c.outer.hessian = hessian_from(mode);
  }
  if (top.has("sto")) {
    Section s = top.sub("sto");
    s.read("cycles", c.sto.cycles);
    s.read("max_iterations", c.sto.max_iterations);
    s.read("step_tolerance", c.sto.step_tolerance);
    s.read("min_duration", c.sto.min_duration);
    s.read("step_factor", c.sto.step_factor);
    s.read("max_backtracks", c.sto.max_backtracks);
    s.read("reset_multipliers", c.sto.reset_multipliers);
  }
  top.read("output_dir", c.output_dir);
  top.read("seed", c.seed);
}

void validate(const RunConfig &c) {
  try {
    if (c.cycles < 1) throw ConfigError("schedule.cycles must be at least 1");
    if (c.sto.cycles < 1) throw ConfigError("sto.cycles must be at least 1");
    c.schedule(c.cycles).knot_counts(c.bounding.h);
    if (c.bounding.knots_per_mode < 1) {
      throw ConfigError("schedule.knots_per_mode must be positive");
    }
    const auto &d = c.ddp;
    if (d.max_iterations < 0 || !(d.cost_tolerance > 0.0) ||
        !(d.step_factor > 0.0 && d.step_factor < 1.0) || d.max_backtracks < 0 ||
        !(d.reg_min > 0.0) || !(d.reg_init >= d.reg_min) ||
        !(d.reg_max >= d.reg_init) || !(d.reg_increase > 1.0) ||
        !(d.reg_decrease > 1.0)) {
      throw ConfigError("invalid ddp settings");
    }
    if (!(c.outer.sigma > 0.0) || !(c.outer.beta > 1.0) ||
        !(c.outer.al_tolerance > 0.0) || c.outer.max_al_iterations < 0) {
      throw ConfigError("invalid al settings");
    }
    c.outer.reb.validate();
    const auto &s = c.sto;
    if (s.max_iterations < 0 || !(s.step_tolerance > 0.0) ||
        !(s.min_duration > 0.0) || !(s.step_factor > 0.0 && s.step_factor < 1.0) ||
        s.max_backtracks < 0) {
      throw ConfigError("invalid sto settings");
    }
    const rbd::RobotModel model(c.robot);
    bounding::build_bounding_problem(c.schedule(c.cycles), model, c.bounding);
    if (!c.modes) {
      bounding::build_bounding_problem(c.schedule(c.sto.cycles), model, c.bounding);
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const InputError &e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string to_string(constraints::PenaltyForm form) {
  return form == constraints::PenaltyForm::kSquaredHalf ? "squared_half" : "half";
}

std::string to_string(constraints::HessianMode mode) {
  return mode == constraints::HessianMode::kExact ? "exact" : "gauss_newton";
}

hybrid::ModeSchedule RunConfig::schedule(int n) const {
  if (modes) {
    std::vector<hybrid::ModeKind> kinds;
    std::vector<double> durations;
    for (const auto &m : *modes) {
      kinds.push_back(m.kind);
      durations.push_back(m.duration);
    }
    return hybrid::ModeSchedule(kinds, durations);
  }
  return hybrid::ModeSchedule::bounding(n, bounding.back_stance, bounding.flight,
                                        bounding.front_stance);
}

constraints::OuterLoopOptions RunConfig::outer_options() const {
  constraints::OuterLoopOptions o = outer;
  o.ddp = ddp;
  return o;
}

sto::StoOptions RunConfig::sto_options() const {
  sto::StoOptions o;
  o.outer = outer_options();
  o.max_iterations = sto.max_iterations;
  o.step_tolerance = sto.step_tolerance;
  o.min_duration = sto.min_duration;
  o.step_factor = sto.step_factor;
  o.max_backtracks = sto.max_backtracks;
  o.reg_init = ddp.reg_init;
  o.reg_max = ddp.reg_max;
  o.reg_increase = ddp.reg_increase;
  o.reset_multipliers = sto.reset_multipliers;
  return o;
}

RunConfig parse_config(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  parse_into(root, c);
  validate(c);
  return c;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig &c) {
  const auto &w = c.bounding.weights;
  const auto &refs = c.bounding.references;
  const auto &ws = c.bounding.warm_start;
  json j = {
      {"robot",
       {{"body", link_json(c.robot.body)},
        {"upper", link_json(c.robot.upper)},
        {"lower", link_json(c.robot.lower)},
        {"gravity", c.robot.gravity},
        {"torque_limit", c.robot.torque_limit},
        {"friction", c.robot.friction},
        {"restitution", c.robot.restitution}}},
      {"schedule",
       {{"cycles", c.cycles},
        {"back_stance", c.bounding.back_stance},
        {"flight", c.bounding.flight},
        {"front_stance", c.bounding.front_stance},
        {"h", c.bounding.h},
        {"knots_per_mode", c.bounding.knots_per_mode}}},
      {"cost",
       {{"forward_speed", w.forward_speed},
        {"height", w.height},
        {"pitch", w.pitch},
        {"joints", w.joints},
        {"body_velocity", w.body_velocity},
        {"joint_velocity", w.joint_velocity},
        {"control", w.control},
        {"terminal_scale", w.terminal_scale},
        {"desired_speed", refs.forward_speed},
        {"references",
         {{"back_stance", posture_json(refs.back_stance)},
          {"flight_1", posture_json(refs.flight_1)},
          {"front_stance", posture_json(refs.front_stance)},
          {"flight_2", posture_json(refs.flight_2)}}}}},
      {"initial_state",
       {{"joints", c.bounding.initial_joints},
        {"pitch", c.bounding.initial_pitch},
        {"speed", c.bounding.initial_speed}}},
      {"warm_start",
       {{"kp", ws.kp},
        {"kd", ws.kd},
        {"stiffness", ws.stiffness},
        {"damping", ws.damping},
        {"rest_length", ws.rest_length},
        {"pitch_kp", ws.pitch_kp},
        {"pitch_kd", ws.pitch_kd}}},
      {"ddp",
       {{"max_iterations", c.ddp.max_iterations},
        {"cost_tolerance", c.ddp.cost_tolerance},
        {"step_factor", c.ddp.step_factor},
        {"max_backtracks", c.ddp.max_backtracks},
        {"reg_init", c.ddp.reg_init},
        {"reg_min", c.ddp.reg_min},
        {"reg_max", c.ddp.reg_max},
        {"reg_increase", c.ddp.reg_increase},
        {"reg_decrease", c.ddp.reg_decrease}}},
      {"al",
       {{"enabled", c.outer.use_al},
        {"sigma", c.outer.sigma},
        {"beta", c.outer.beta},
        {"tolerance", c.outer.al_tolerance},
        {"max_iterations", c.outer.max_al_iterations},
        {"penalty_form", to_string(c.outer.form)}}},
      {"reb",
       {{"enabled", c.outer.use_reb},
        {"weight", c.outer.reb.weight},
        {"delta", c.outer.reb.delta},
        {"order", c.outer.reb.order},
        {"delta_decay", c.outer.reb.delta_decay}}},
      {"constraint_hessian", to_string(c.outer.hessian)},
      {"sto",
       {{"cycles", c.sto.cycles},
        {"max_iterations", c.sto.max_iterations},
        {"step_tolerance", c.sto.step_tolerance},
        {"min_duration", c.sto.min_duration},
        {"step_factor", c.sto.step_factor},
        {"max_backtracks", c.sto.max_backtracks},
        {"reset_multipliers", c.sto.reset_multipliers}}},
      {"output_dir", c.output_dir},
      {"seed", c.seed}};
  if (c.modes) {
    json m = json::array();
    for (const auto &spec : *c.modes) {
      m.push_back({{"kind", hybrid::to_string(spec.kind)},
                   {"duration", spec.duration}});
    }
    j["schedule"]["modes"] = m;
  }
  return j.dump(2) + "\n";
}

}  // namespace hsddp::io
