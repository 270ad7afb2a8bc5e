// Copyright 2026 The PLS Tomography Authors
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

#include "pls/channel_model.hpp"
#include "pls/designs.hpp"
#include "pls/estimators.hpp"
#include "pls/projections.hpp"
#include "pls/simulator.hpp"

namespace {

using namespace pls;

ChoiMatrix qft_choi(int dim) { return choi_from_kraus(make_channel(ChannelSpec::noisy_qft(dim, 0.25))); }

// Argument: qubits k, Choi matrices are 4^k x 4^k.
void BM_ProjCp(benchmark::State& state) {
  const int n = 1 << (2 * state.range(0));
  const Matrix x = random_hermitian(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(proj_cp(x));
}
BENCHMARK(BM_ProjCp)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ChoiMatrix truth = qft_choi(1 << k);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample(truth, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 1000000, 1}));
}
BENCHMARK(BM_Sample)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_LeastSquares(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Scenario sc = scenario_from_int(static_cast<int>(state.range(1)));
  const FrequencyTable table = sample(qft_choi(1 << k), sc, {SamplingScheme::kRandom, 1000000, 2});
  for (auto _ : state) benchmark::DoNotOptimize(least_squares(table));
}
BENCHMARK(BM_LeastSquares)
    ->ArgsProduct({{1, 2, 3}, {1, 2, 3, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto method = static_cast<ProjectionMethod>(state.range(1));
  const FrequencyTable table = sample(qft_choi(1 << k), Scenario::kPauliAncilla, {SamplingScheme::kRandom, 100000, 3});
  const Matrix x = least_squares(table).matrix;
  const Matrix cp1 = proj_cp1_thresholded(x, std::max(0.0, -min_eigenvalue(x)));
  ProjectionConfig cfg;
  cfg.max_outer_iterations = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(project_to_cptp(cp1, method, cfg));
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Projection)
    ->ArgsProduct({{2, 3}, {0, 1, 2, 3, 4, 5}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
