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

#include "catsim/qec.hpp"

using namespace catsim;

namespace {

RepCodeParams bench_params(int n, int r) {
  RepCodeParams p;
  p.n = n;
  p.r = r;
  p.p_idle = 1e-2;
  p.p_prep = 1e-2;
  p.p_meas = 1e-2;
  p.p_cnot_zc = 5e-3;
  p.p_cnot_zt = 2.5e-3;
  p.p_cnot_zczt = 2.5e-3;
  return p;
}

void BM_memory_shots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RepCodeParams p = bench_params(n, 3);
  FaultCircuit c = memory_circuit(p);
  uint64_t seed = 1;
  for (auto _ : state) {
    auto rate = logical_error_rate(c, p, 2000, seed++, 1);
    benchmark::DoNotOptimize(rate.p_zl);
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_memory_shots)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_toffoli_gadget_shots(benchmark::State& state) {
  RepCodeParams p = bench_params(3, 1);
  for (int k = 0; k < 7; ++k) p.p_tof[k] = 2e-3;
  FaultCircuit c = logical_gadget(GadgetKind::toffoli_pieceable, p);
  uint64_t seed = 1;
  for (auto _ : state) {
    auto rate = logical_error_rate(c, p, 2000, seed++, 1);
    benchmark::DoNotOptimize(rate.p_zl);
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_toffoli_gadget_shots)->Unit(benchmark::kMillisecond);

void BM_decode(benchmark::State& state) {
  RepCodeParams p = bench_params(static_cast<int>(state.range(0)), 5);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SyndromeHistory h = SyndromeHistory::zeros(p.n - 1, p.r);
  for (auto& b : h.bits) b = unif(rng) < 0.05 ? 1 : 0;
  for (auto _ : state) {
    auto corr = decode(h, p);
    benchmark::DoNotOptimize(corr.data());
  }
}
BENCHMARK(BM_decode)->Arg(5)->Arg(9);

}  // namespace
