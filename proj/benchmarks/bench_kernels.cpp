// Copyright 2026 The lans-alpha Authors
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

#include <benchmark/benchmark.h>

#include "lans/bilinear.hpp"
#include "lans/random.hpp"
#include "lans/rate.hpp"
#include "lans/solver.hpp"

using namespace lans;

namespace {

SolverConfig bench_config(int n) {
  SolverConfig c;
  c.lattice = make_lattice(n);
  c.dt = 1e-3;
  c.horizon = 0.05;
  c.alpha = 0.1;
  c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::additive, {0.1, 0.1},
                                      {{{1, 0}, Phase::cosine}, {{1, 1}, Phase::sine}});
  c.record_stride = 50;
  return c;
}

}  // namespace

static void BM_BilinearB(benchmark::State& state) {
  const auto lat = make_lattice(static_cast<int>(state.range(0)));
  Engine e = make_engine(1, 0);
  const auto u = random_field(lat, e), v = random_field(lat, e);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_b(u, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BilinearB)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_BtildeAlpha(benchmark::State& state) {
  const auto lat = make_lattice(static_cast<int>(state.range(0)));
  Engine e = make_engine(2, 0);
  const auto u = random_field(lat, e), v = random_field(lat, e);
  for (auto _ : state) benchmark::DoNotOptimize(btilde_alpha(u, v, 0.1));
}
BENCHMARK(BM_BtildeAlpha)->RangeMultiplier(2)->Range(16, 256);

// 50 steps per iteration.
static void BM_LansSteps(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  Engine e = make_engine(3, 0);
  const auto xi = random_field(cfg.lattice, e);
  const auto w = sample_wiener(2, cfg.dt, cfg.steps(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lans(xi, cfg, &w));
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}
BENCHMARK(BM_LansSteps)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_UnifiedModerateSteps(benchmark::State& state) {
  auto cfg = bench_config(static_cast<int>(state.range(0)));
  cfg.scaling.delta = 1;
  Engine e = make_engine(5, 0);
  const auto xi = random_field(cfg.lattice, e);
  const auto flow = reference_flow(xi, cfg);
  const auto w = sample_wiener(2, cfg.dt, cfg.steps(), 6);
  for (auto _ : state) benchmark::DoNotOptimize(solve_unified(xi, cfg, nullptr, &w, &flow));
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}
BENCHMARK(BM_UnifiedModerateSteps)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_AdjointResponse(benchmark::State& state) {
  auto cfg = bench_config(static_cast<int>(state.range(0)));
  cfg.scaling.delta = 1;
  Engine e = make_engine(7, 0);
  const auto xi = random_field(cfg.lattice, e);
  const auto flow = reference_flow(xi, cfg);
  const auto g = random_field(cfg.lattice, e);
  for (auto _ : state) benchmark::DoNotOptimize(observable_response_adjoint(g, cfg, flow));
}
BENCHMARK(BM_AdjointResponse)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
