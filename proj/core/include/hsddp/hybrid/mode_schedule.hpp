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

#include <optional>
#include <string>
#include <vector>

#include "hsddp/rbd/contact_dynamics.hpp"

namespace hsddp::hybrid {

enum class ModeKind { kBackStance, kFlight1, kFrontStance, kFlight2 };

std::string to_string(ModeKind kind);
ModeKind mode_kind_from_string(const std::string &name);

struct Mode {
  ModeKind kind = ModeKind::kBackStance;
  rbd::ContactSet contacts;
  // Foot scheduled to touch down when the mode ends (flight modes only).
  std::optional<rbd::Foot> touchdown_foot;
  // True iff the following mode adds a contact, i.e. an impact reset occurs.
  bool has_impact_at_exit = false;

  bool is_stance() const { return !contacts.empty(); }
};

/// Contacts and touchdown foot of a bounding mode.
Mode make_mode(ModeKind kind);

/// Fixed mode sequence with per-mode durations T_i (seconds).
class ModeSchedule {
 public:
  ModeSchedule(const std::vector<ModeKind> &kinds, std::vector<double> durations);

  /// The four-mode bounding cycle starting from back stance, repeated.
  static ModeSchedule bounding(int cycles, double back_stance, double flight,
                               double front_stance);

  int num_modes() const { return static_cast<int>(modes_.size()); }
  const Mode &mode(int i) const { return modes_.at(i); }
  const std::vector<Mode> &modes() const { return modes_; }
  const std::vector<double> &durations() const { return durations_; }
  std::vector<ModeKind> kinds() const;
  double total_time() const;

  /// Knots per mode for step h; each duration must be an integer multiple of h.
  std::vector<int> knot_counts(double h) const;
  /// Switching times t_i (ends of modes).
  std::vector<double> switching_times() const;
  /// Modes that end in a touchdown (the set of switching constraints).
  std::vector<int> touchdown_indices() const;

  ModeSchedule with_durations(std::vector<double> durations) const;

 private:
  std::vector<Mode> modes_;
  std::vector<double> durations_;
};

}  // namespace hsddp::hybrid
