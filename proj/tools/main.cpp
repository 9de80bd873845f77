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

// hsddp: bounding trajectory optimization runs from the command line.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hsddp/io/artifacts.hpp"
#include "hsddp/io/experiments.hpp"
#include "hsddp/io/run_config.hpp"

namespace {

using namespace hsddp;

io::RunConfig config_or_default(const std::string &path) {
  return path.empty() ? io::parse_config("{}") : io::load_config(path);
}

// Runs fn and maps exceptions onto the exit-code contract.
template <typename F>
int guarded(F &&fn) {
  try {
    return fn();
  } catch (const io::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return io::kExitConfigError;
  } catch (const io::MissingInputError &e) {
    std::cerr << "missing input: " << e.what() << '\n';
    return io::kExitMissingInput;
  } catch (const InputError &e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return io::kExitConfigError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return io::kExitNotConverged;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hybrid-system DDP for planar quadruped bounding"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;

  auto *solve = app.add_subcommand("solve", "Solve the bounding problem at fixed timing");
  int cycles = 0;
  bool no_al = false;
  bool no_reb = false;
  solve->add_option("--config", config_path, "Run configuration (JSON)");
  solve->add_option("--cycles", cycles, "Gait cycles (overrides the config)")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--no-al", no_al, "Plain impact-aware DDP, no switching constraints");
  solve->add_flag("--no-reb", no_reb, "Disable the relaxed barrier on inequalities");
  solve->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto *sto = app.add_subcommand("sto", "Optimize the mode durations");
  bool feedforward = false;
  int iters = -1;
  sto->add_option("--config", config_path, "Run configuration (JSON)");
  sto->add_flag("--baseline-feedforward", feedforward,
                "Evaluate timing candidates open loop");
  sto->add_option("--iters", iters, "Switching-time iterations (overrides the config)")
      ->check(CLI::NonNegativeNumber);
  sto->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto *sens = app.add_subcommand("sensitivity", "Step-size sweep at an sto solution");
  std::string solution_path;
  sens->add_option("--config", config_path,
                   "Run configuration (default: the one stored in the solution)");
  sens->add_option("--solution", solution_path, "solution.json written by 'sto'")
      ->required();
  sens->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto *config = app.add_subcommand("config", "Configuration helpers");
  config->require_subcommand(1);
  auto *init = config->add_subcommand("init", "Print the default configuration");
  std::string init_path;
  init->add_option("--output,-o", init_path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : io::kExitConfigError;
  }

  if (*solve) {
    return guarded([&] {
      io::RunConfig c = config_or_default(config_path);
      if (cycles > 0) c.cycles = cycles;
      if (no_al) c.outer.use_al = false;
      if (no_reb) c.outer.use_reb = false;
      if (!out_dir.empty()) c.output_dir = out_dir;
      c = io::parse_config(io::config_to_json(c));  // revalidate the overrides
      return io::run_solve(c, std::cout).exit_code;
    });
  }
  if (*sto) {
    return guarded([&] {
      io::RunConfig c = config_or_default(config_path);
      if (iters >= 0) c.sto.max_iterations = iters;
      if (!out_dir.empty()) c.output_dir = out_dir;
      return io::run_sto(c, feedforward, std::cout).exit_code;
    });
  }
  if (*sens) {
    return guarded([&] {
      io::RunConfig c = config_path.empty()
                            ? io::parse_config(io::load_solution(solution_path).config_json)
                            : io::load_config(config_path);
      if (!out_dir.empty()) c.output_dir = out_dir;
      return io::run_sensitivity(c, solution_path, std::cout).exit_code;
    });
  }
  if (*init) {
    return guarded([&] {
      const std::string text = io::config_to_json(io::RunConfig{});
      if (init_path.empty()) {
        std::cout << text;
      } else {
        io::write_file(init_path, text);
      }
      return 0;
    });
  }
  return 0;
}
