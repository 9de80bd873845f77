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

#include "hsddp/io/experiments.hpp"

#include <filesystem>
#include <sstream>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/hybrid/rollout.hpp"
#include "hsddp/io/artifacts.hpp"
#include "hsddp/sto/sensitivity.hpp"
#include "json.hpp"

namespace hsddp::io {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

class ArtifactWriter {
 public:
  explicit ArtifactWriter(const std::string &dir) : dir_(dir) {
    fs::create_directories(dir_);
  }
  void write(const std::string &name, const std::string &text) {
    const std::string path = (dir_ / name).string();
    write_file(path, text);
    files_.push_back(path);
  }
  std::vector<std::string> files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

json vector_json(const Vector &v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json metrics_json(const TrajectoryMetrics &m) {
  return {{"total_time", m.total_time},
          {"max_abs_torque", m.max_abs_torque},
          {"min_normal_force", m.min_normal_force},
          {"max_friction_excess", m.max_friction_excess},
          {"min_margin", m.min_margin},
          {"violation", m.violation},
          {"max_abs_residual", m.max_abs_residual}};
}

std::string trajectory_text(const hybrid::Discretization &disc,
                            const hybrid::RobotHybridSystem &system,
                            const Trajectory &traj) {
  std::ostringstream os;
  write_trajectory_csv(os, disc, system, traj);
  return os.str();
}

void write_outer_logs(ArtifactWriter &out, const constraints::OuterReport &report) {
  std::ostringstream ddp;
  constraints::write_ddp_csv(ddp, report);
  out.write("ddp_log.csv", ddp.str());
  std::ostringstream al;
  constraints::write_al_csv(al, report);
  out.write("al_log.csv", al.str());
}

}  // namespace

RunOutcome run_solve(const RunConfig &config, std::ostream &log) {
  const rbd::RobotModel model(config.robot);
  const auto bp = bounding::build_bounding_problem(config.schedule(config.cycles),
                                                   model, config.bounding);
  const auto disc = bp.fixed_step();
  const Vector x0 = bp.x0.stacked();
  const ControlSequence u0 = bounding::warm_start(*disc, *bp.policy, x0);
  const auto options = config.outer_options();

  log << "solve: " << bp.schedule.num_modes() << " modes, " << bp.horizon()
      << " knots, AL " << (options.use_al ? "on" : "off") << ", ReB "
      << (options.use_reb ? "on" : "off") << '\n';
  const auto result = constraints::outer_loop(disc, bp.cost, u0, x0, options);
  const auto metrics = trajectory_metrics(*disc, *bp.system, result.solution.traj);
  const auto warm = trajectory_metrics(*disc, *bp.system, hybrid::rollout(*disc, u0, x0));
  const bool converged = result.report.converged;
  const int code = converged ? kExitConverged : kExitNotConverged;
  log << "solve: " << result.report.reason << "; " << result.report.al_iterations.size()
      << " outer iterations, " << result.report.ddp.iterations.size()
      << " DDP iterations, sum g^2 = " << metrics.violation
      << ", min margin = " << metrics.min_margin << '\n';

  ArtifactWriter out(config.output_dir);
  out.write("trajectory.csv", trajectory_text(*disc, *bp.system, result.solution.traj));
  write_outer_logs(out, result.report);

  SavedSolution saved;
  saved.kind = "solve";
  saved.config_json = config_to_json(config);
  saved.cycles = config.cycles;
  saved.durations = bp.durations();
  saved.controls = result.solution.traj.controls();
  if (options.use_al) saved.al = result.al;
  saved.reb = result.reb;
  saved.converged = converged;
  out.write("solution.json", solution_to_json(saved));

  json summary = {
      {"command", "solve"},
      {"cycles", config.cycles},
      {"knots", bp.horizon()},
      {"use_al", options.use_al},
      {"use_reb", options.use_reb},
      {"converged", converged},
      {"ddp_converged", result.solution.report.converged},
      {"reason", result.report.reason},
      {"exit_code", code},
      {"seed", config.seed},
      {"al_iterations", result.report.al_iterations.size()},
      {"ddp_iterations", result.report.ddp.iterations.size()},
      {"accepted_steps", result.report.ddp.accepted_steps()},
      {"al_tolerance", options.al_tolerance},
      {"final_cost", result.solution.cost},
      {"base_cost", result.base_cost},
      {"torque_limit", model.torque_limit()},
      {"friction", model.friction()},
      {"final", metrics_json(metrics)},
      {"warm_start", metrics_json(warm)}};
  out.write("summary.json", summary.dump(2) + "\n");
  return {code, out.files()};
}

RunOutcome run_sto(const RunConfig &config, bool feedforward_baseline,
                   std::ostream &log) {
  const rbd::RobotModel model(config.robot);
  const auto bp = bounding::build_bounding_problem(
      config.schedule(config.sto.cycles), model, config.bounding);
  const auto disc = bp.time_scaled();
  const Vector x0 = bp.x0.stacked();
  const Vector z0 = bp.durations();
  const ControlSequence u0 =
      bounding::warm_start(*disc, *bp.policy, disc->augment(x0, z0));
  auto options = config.sto_options();
  options.feedforward_baseline = feedforward_baseline;

  log << "sto: " << bp.schedule.num_modes() << " modes, " << bp.knots_per_mode
      << " knots per mode, " << options.max_iterations << " iterations max"
      << (feedforward_baseline ? ", feedforward baseline" : "") << '\n';
  const auto result = sto::sto_solve(disc, bp.cost, u0, x0, z0, options);
  const auto &traj = result.inner.solution.traj;
  const auto metrics = trajectory_metrics(*disc, *bp.system, traj);
  const bool timing_done =
      result.report.converged ||
      (result.report.stalled && !result.report.iterations.empty() &&
       result.report.reason == "timing line search exhausted");
  const bool converged = result.inner.report.converged && timing_done;
  const int code = converged ? kExitConverged : kExitNotConverged;
  const double t0 = z0.sum();
  const double t1 = result.z.sum();
  log << "sto: " << result.report.reason << "; total time " << t0 << " s -> " << t1
      << " s (" << 100.0 * (1.0 - t1 / t0) << "% shorter)\n";

  ArtifactWriter out(config.output_dir);
  std::ostringstream sto_csv;
  sto::write_sto_csv(sto_csv, result.report);
  out.write("sto.csv", sto_csv.str());
  out.write("trajectory.csv", trajectory_text(*disc, *bp.system, traj));
  write_outer_logs(out, result.inner.report);

  SavedSolution saved;
  saved.kind = "sto";
  saved.config_json = config_to_json(config);
  saved.cycles = config.sto.cycles;
  saved.durations = result.z;
  saved.controls = traj.controls();
  if (options.outer.use_al) saved.al = result.inner.al;
  saved.reb = result.inner.reb;
  saved.converged = converged;
  out.write("solution.json", solution_to_json(saved));

  bool floor_hit = false;
  for (const auto &it : result.report.iterations) floor_hit = floor_hit || it.floor_active;
  json summary = {
      {"command", "sto"},
      {"cycles", config.sto.cycles},
      {"feedforward_baseline", feedforward_baseline},
      {"iterations", result.report.iterations.size()},
      {"converged", converged},
      {"timing_converged", result.report.converged},
      {"stalled", result.report.stalled},
      {"inner_converged", result.inner.report.converged},
      {"reason", result.report.reason},
      {"exit_code", code},
      {"seed", config.seed},
      {"initial_durations", vector_json(z0)},
      {"final_durations", vector_json(result.z)},
      {"initial_total_time", t0},
      {"final_total_time", t1},
      {"reduction", 1.0 - t1 / t0},
      {"duration_floor_hit", floor_hit},
      {"final_cost", result.inner.solution.cost},
      {"base_cost", result.inner.base_cost},
      {"final", metrics_json(metrics)}};
  out.write("summary.json", summary.dump(2) + "\n");
  return {code, out.files()};
}

RunOutcome run_sensitivity(const RunConfig &config,
                           const std::string &solution_path, std::ostream &log) {
  const SavedSolution saved = load_solution(solution_path);
  if (saved.kind != "sto") {
    throw MissingInputError(solution_path + " is not a switching-time solution");
  }
  const rbd::RobotModel model(config.robot);
  const auto base = config.schedule(saved.cycles);
  if (static_cast<int>(saved.durations.size()) != base.num_modes()) {
    throw ConfigError("solution has " + std::to_string(saved.durations.size()) +
                      " modes but the config schedule has " +
                      std::to_string(base.num_modes()));
  }
  std::vector<double> z(saved.durations.data(),
                        saved.durations.data() + saved.durations.size());
  const auto bp = bounding::build_bounding_problem(base.with_durations(z), model,
                                                   config.bounding);
  const auto disc = bp.time_scaled();
  if (static_cast<int>(saved.controls.size()) != disc->total_knots()) {
    throw ConfigError("solution controls do not match the config discretization");
  }
  const Vector x0 = disc->augment(bp.x0.stacked(), saved.durations);
  const auto options = config.outer_options();
  const constraints::ConstrainedHybridProblem problem(disc, bp.cost, saved.al,
                                                      saved.reb, options.hessian);

  const auto nominal = ddp::evaluate(problem, saved.controls, x0);
  const auto back =
      ddp::backward_sweep(problem, nominal.traj, options.ddp.reg_init, options.ddp);
  const int nz = disc->num_phases();
  double reg = 0.0;
  const Vector vz = back.value.vx.tail(nz);
  const Matrix vzz = back.value.vxx.bottomRightCorner(nz, nz);
  const Vector dz = sto::newton_step(vz, vzz, options.ddp.reg_init,
                                     options.ddp.reg_max, options.ddp.reg_increase, reg);
  const sto::SensitivityInput input{nominal.traj, nominal.cost, back.policy,
                                    back.value, x0, dz};
  const auto rows = sto::step_sensitivity_sweep(problem, input, sto::default_step_grid());

  const double s_timing = sto::largest_decreasing_step(rows, "timing");
  const double s_control = sto::largest_decreasing_step(rows, "control");
  const double s_both = sto::largest_decreasing_step(rows, "both");
  log << "sensitivity: largest decreasing step timing " << s_timing << ", control "
      << s_control << ", both " << s_both << '\n';

  ArtifactWriter out(config.output_dir);
  std::ostringstream csv;
  sto::write_sensitivity_csv(csv, rows);
  out.write("sensitivity.csv", csv.str());
  json summary = {
      {"command", "sensitivity"},
      {"durations", vector_json(saved.durations)},
      {"cost", nominal.cost},
      {"vz", vector_json(vz)},
      {"newton_step", vector_json(dz)},
      {"newton_reg", reg},
      {"expected_control_change", back.value.expected_change(1.0)},
      {"rows", rows.size()},
      {"largest_decreasing_step",
       {{"timing", s_timing}, {"control", s_control}, {"both", s_both}}},
      {"exit_code", kExitConverged}};
  out.write("summary.json", summary.dump(2) + "\n");
  return {kExitConverged, out.files()};
}

}  // namespace hsddp::io
