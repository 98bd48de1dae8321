// Copyright 2026 The Offload Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "offload/dual_solver.h"
#include "offload/experiments.h"
#include "offload/subproblems.h"

namespace offload {
namespace {

ExperimentConfig UrbanConfig(double adoption) {
  ExperimentConfig c;
  c.scenario.adoption_rate = adoption;
  return c;
}

Problem BuildProblem(const ExperimentConfig& c, uint64_t seed) {
  const Scenario s = GenerateStochastic(c.scenario, seed);
  const LinkGraph g = BuildLinkGraph(s, c.channel, c.coupling, seed);
  return Assemble(g, s, c.economics, c.channel);
}

void BM_InterferenceApply(benchmark::State& state) {
  const Problem p = BuildProblem(UrbanConfig(state.range(0) / 100.0), 1);
  std::vector<double> w(p.num_links(), 0.5), z(p.num_links());
  for (auto _ : state) {
    p.g().Apply(w, z);
    benchmark::DoNotOptimize(z.data());
  }
  state.counters["links"] = p.num_links();
}
BENCHMARK(BM_InterferenceApply)->Arg(0)->Arg(5)->Arg(20);

void BM_SolveWz(benchmark::State& state) {
  const RhoCurve curve{300.0, 0.5, 4.8};
  const WzGrid grid(curve, 1e-3, 1e4, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WzParams p;
  p.w_cap = 10.0;
  for (auto _ : state) {
    p.mu_r = u(rng);
    p.lambda_w = u(rng);
    p.lambda_z = 1e-3 * u(rng);
    benchmark::DoNotOptimize(SolveWz(p, curve, grid));
  }
}
BENCHMARK(BM_SolveWz)->Arg(16)->Arg(64)->Arg(256);

void BM_DualAscent(benchmark::State& state) {
  const Problem p = BuildProblem(UrbanConfig(0.05), 2);
  SolverConfig config;
  config.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DualAscent(p, config).dual_bound);
  }
  state.counters["links"] = p.num_links();
}
BENCHMARK(BM_DualAscent)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SmallDrop(benchmark::State& state) {
  ExperimentConfig c;
  c.scenario.area_width_m = 400;
  c.scenario.area_height_m = 400;
  c.scenario.micro_cells = 3;
  c.scenario.ap_count = 600;
  c.scenario.ue_per_cell = 10;
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunDrop(c, ++seed).net_utility);
  }
}
BENCHMARK(BM_SmallDrop)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace offload

BENCHMARK_MAIN();
