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

#include "hsddp/hybrid/mode_schedule.hpp"

#include <cmath>
#include <numeric>

namespace hsddp::hybrid {

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::kBackStance:
      return "back_stance";
    case ModeKind::kFlight1:
      return "flight_1";
    case ModeKind::kFrontStance:
      return "front_stance";
    case ModeKind::kFlight2:
      return "flight_2";
  }
  return "unknown";
}

ModeKind mode_kind_from_string(const std::string &name) {
  for (ModeKind k : {ModeKind::kBackStance, ModeKind::kFlight1,
                     ModeKind::kFrontStance, ModeKind::kFlight2}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown mode kind '" + name + "'");
}

Mode make_mode(ModeKind kind) {
  using rbd::Foot;
  Mode m;
  m.kind = kind;
  switch (kind) {
    case ModeKind::kBackStance:
      m.contacts = rbd::ContactSet{Foot::kBack};
      break;
    case ModeKind::kFlight1:
      m.touchdown_foot = Foot::kFront;
      break;
    case ModeKind::kFrontStance:
      m.contacts = rbd::ContactSet{Foot::kFront};
      break;
    case ModeKind::kFlight2:
      m.touchdown_foot = Foot::kBack;
      break;
  }
  return m;
}

ModeSchedule::ModeSchedule(const std::vector<ModeKind> &kinds,
                           std::vector<double> durations)
    : durations_(std::move(durations)) {
  if (kinds.empty()) throw InputError("mode schedule needs at least one mode");
  if (kinds.size() != durations_.size()) {
    throw InputError("mode schedule: one duration per mode required");
  }
  for (double t : durations_) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw InputError("mode durations must be positive");
    }
  }
  modes_.reserve(kinds.size());
  for (ModeKind k : kinds) modes_.push_back(make_mode(k));
  for (std::size_t i = 0; i + 1 < modes_.size(); ++i) {
    const auto &next = modes_[i + 1].contacts;
    bool adds = false;
    for (rbd::Foot f : next.feet()) {
      if (!modes_[i].contacts.contains(f)) adds = true;
    }
    modes_[i].has_impact_at_exit = adds;
    if (adds && modes_[i].touchdown_foot) {
      if (!next.contains(*modes_[i].touchdown_foot)) {
        throw InputError("touchdown foot is not in contact in the next mode");
      }
    }
  }
}

ModeSchedule ModeSchedule::bounding(int cycles, double back_stance,
                                    double flight, double front_stance) {
  if (cycles < 1) throw InputError("bounding schedule needs at least one cycle");
  std::vector<ModeKind> kinds;
  std::vector<double> durations;
  for (int c = 0; c < cycles; ++c) {
    kinds.insert(kinds.end(), {ModeKind::kBackStance, ModeKind::kFlight1,
                               ModeKind::kFrontStance, ModeKind::kFlight2});
    durations.insert(durations.end(), {back_stance, flight, front_stance, flight});
  }
  return ModeSchedule(kinds, std::move(durations));
}

std::vector<ModeKind> ModeSchedule::kinds() const {
  std::vector<ModeKind> out;
  for (const auto &m : modes_) out.push_back(m.kind);
  return out;
}

double ModeSchedule::total_time() const {
  return std::accumulate(durations_.begin(), durations_.end(), 0.0);
}

std::vector<int> ModeSchedule::knot_counts(double h) const {
  if (!(h > 0.0)) throw InputError("integration step must be positive");
  std::vector<int> out;
  for (double t : durations_) {
    const double ratio = t / h;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-6) {
      throw InputError("mode duration " + std::to_string(t) +
                       " s is not a positive multiple of h = " +
                       std::to_string(h) + " s");
    }
    out.push_back(static_cast<int>(n));
  }
  return out;
}

std::vector<double> ModeSchedule::switching_times() const {
  std::vector<double> out;
  double t = 0.0;
  for (double d : durations_) {
    t += d;
    out.push_back(t);
  }
  return out;
}

std::vector<int> ModeSchedule::touchdown_indices() const {
  std::vector<int> out;
  for (int i = 0; i < num_modes(); ++i) {
    if (modes_[i].touchdown_foot) out.push_back(i);
  }
  return out;
}

ModeSchedule ModeSchedule::with_durations(std::vector<double> durations) const {
  return ModeSchedule(kinds(), std::move(durations));
}

}  // namespace hsddp::hybrid
