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

#include <benchmark/benchmark.h>

#include "hsddp/bounding/bounding_problem.hpp"
#include "hsddp/bounding/warm_start.hpp"
#include "hsddp/constraints/outer_loop.hpp"
#include "hsddp/ddp/solver.hpp"
#include "hsddp/hybrid/rollout.hpp"
#include "hsddp/rbd/contact_dynamics.hpp"

namespace {

using namespace hsddp;

struct Fixture {
  bounding::BoundingProblem bp;
  std::shared_ptr<const hybrid::FixedStepDiscretization> disc;
  Vector x0;
  ControlSequence u0;

  explicit Fixture(int cycles)
      : bp(bounding::build_bounding_problem(cycles, rbd::RobotModel{}, bounding::BoundingConfig{})),
        disc(bp.fixed_step()),
        x0(bp.x0.stacked()),
        u0(bounding::warm_start(*disc, *bp.policy, x0)) {}
};

void BM_LinearizeStep(benchmark::State &state) {
  const rbd::RobotModel model;
  const rbd::State x = bounding::initial_state(model, bounding::BoundingConfig{});
  const rbd::Torques u = rbd::Torques::Constant(2.0);
  const rbd::ContactSet contacts{rbd::Foot::kBack};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rbd::linearize_step(model, x, u, contacts, 0.001));
  }
}
BENCHMARK(BM_LinearizeStep);

void BM_Rollout(benchmark::State &state) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hybrid::rollout(*f.disc, f.u0, f.x0));
  }
  state.SetItemsProcessed(state.iterations() * f.disc->total_knots());
}
BENCHMARK(BM_Rollout)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BackwardSweep(benchmark::State &state) {
  const Fixture f(static_cast<int>(state.range(0)));
  constraints::OuterLoopOptions options;
  const constraints::ConstrainedHybridProblem problem(
      f.disc, f.bp.cost,
      constraints::ALState::initial(*f.bp.system, options.sigma, options.beta,
                                    options.al_tolerance, options.form),
      options.reb, options.hessian);
  const auto nominal = ddp::evaluate(problem, f.u0, f.x0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ddp::backward_sweep(problem, nominal.traj, 1e-6, options.ddp));
  }
  state.SetItemsProcessed(state.iterations() * f.disc->total_knots());
}
BENCHMARK(BM_BackwardSweep)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
