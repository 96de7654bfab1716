// Copyright 2026 The qthermo Authors
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

#include "qthermo/entropy_production.hpp"
#include "qthermo/scenario.hpp"

namespace {

using namespace qthermo;

Rng bench_rng() {
  std::seed_seq seq{42};
  return Rng(seq);
}

void BM_EigHermitian(benchmark::State& state) {
  Rng rng = bench_rng();
  const HermitianMatrix h = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_Evolve(benchmark::State& state) {
  Rng rng = bench_rng();
  const Index d = state.range(0);
  const HamiltonianSchedule s = random_schedule(2, d, 2, 1.0, rng);
  const BipartiteState rho(2, d, random_density(2 * d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(rho, s, 250));
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_Evolve)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EffectiveBeta(benchmark::State& state) {
  Rng rng = bench_rng();
  const EnvHamiltonian h(random_hermitian(state.range(0), rng));
  const DensityMatrix rho = random_density(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(effective_beta(rho, h));
}
BENCHMARK(BM_EffectiveBeta)->Arg(2)->Arg(8);

void BM_BuildReport(benchmark::State& state) {
  Rng rng = bench_rng();
  const HamiltonianSchedule s = random_schedule(2, 3, 2, 1.0, rng);
  const Trajectory traj = evolve(BipartiteState(2, 3, random_density(6, rng)), s, 500);
  const TabulatedBeta ramp({0.0, 0.5, 1.0}, {0.3, 1.0, 0.6});
  for (auto _ : state) benchmark::DoNotOptimize(build_report(traj, ramp));
}
BENCHMARK(BM_BuildReport)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
