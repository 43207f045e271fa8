// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "catsim/fock.hpp"
#include "catsim/gates.hpp"
#include "catsim/lindblad.hpp"
#include "catsim/tomography.hpp"

using namespace catsim;

namespace {

void BM_idle_step(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  CatQubitParams p{2.0, 1.0, 1e-3, 0.0, 0.0};
  auto sched = idle_schedule(p, 1.0, NoiseSpec::from(p), trunc);
  StateVector even = cat_state(2.0, CatParity::even, {trunc});
  DensityMatrix rho = DensityMatrix::from_pure(even);
  StepControl ctrl;
  ctrl.dt = 1e-3;
  GateSchedule tiny = sched;
  for (auto _ : state) {
    tiny.duration = 16e-3;  // 16 steps per iteration
    auto res = evolve(rho, tiny, ctrl);
    benchmark::DoNotOptimize(res.trace_drift);
  }
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_idle_step)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_cnot_step(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  CatQubitParams p{2.0, 1.0, 1e-3, 0.0, 0.0};
  auto sched = cnot_schedule(p, p, 1.0, true, PhaseCompensation::frame, trunc);
  auto even = cat_state(2.0, CatParity::even, {trunc});
  auto psi = tensor(std::vector<StateVector>{even, even});
  DensityMatrix rho = DensityMatrix::from_pure(psi);
  StepControl ctrl;
  ctrl.dt = 1e-3;
  GateSchedule tiny = sched;
  for (auto _ : state) {
    tiny.duration = 8e-3;
    auto res = evolve(rho, tiny, ctrl);
    benchmark::DoNotOptimize(res.trace_drift);
  }
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_cnot_step)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_wigner(benchmark::State& state) {
  StateVector even = cat_state(2.0, CatParity::even, {24});
  DensityMatrix rho = DensityMatrix::from_pure(even);
  for (auto _ : state) {
    auto grid = wigner_grid(rho, -3.0, 3.0, -3.0, 3.0, 0.25);
    benchmark::DoNotOptimize(grid.w(0, 0));
  }
}
BENCHMARK(BM_wigner)->Unit(benchmark::kMillisecond);

void BM_single_mode_tomography(benchmark::State& state) {
  CatQubitParams p{1.5, 1.0, 1e-3, 0.0, 0.0};
  GateSpec spec;
  spec.kind = GateKind::idle;
  spec.modes = {p};
  spec.duration = 0.2;
  spec.truncation = 16;
  for (auto _ : state) {
    auto rep = tomography_of_gate(spec, {});
    benchmark::DoNotOptimize(rep.x_type_weight);
  }
}
BENCHMARK(BM_single_mode_tomography)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
