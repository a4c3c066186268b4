// Copyright 2026 The hdbsm Authors
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

#include "hdbsm/optics.hpp"

namespace {

using namespace hdbsm;

const PhaseConvention kMatching(-1, 1);

// Brute-force expansion of one hyperentangled state, d^4 projections.
void BM_Decompose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BellIndex idx(d, d - 1, d - 1);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(idx, kMatching));
}
BENCHMARK(BM_Decompose)->DenseRange(2, 6);

void BM_CoincidenceProbabilities(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const StateVector input = hyperentangled_state(BellIndex(d, 1, 1), kMatching);
  for (auto _ : state) benchmark::DoNotOptimize(coincidence_probabilities(input, kMatching));
}
BENCHMARK(BM_CoincidenceProbabilities)->DenseRange(2, 6);

void BM_DetectorCoincidences(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const StateVector input = prepare_bell(d, 1, 1, kMatching);
  const BsaLayout layout(d, kMatching);
  for (auto _ : state) benchmark::DoNotOptimize(detector_coincidences(input, layout));
}
BENCHMARK(BM_DetectorCoincidences)->DenseRange(2, 6);

void BM_SampleOutcomes(benchmark::State& state) {
  const CoincidenceTable table = coincidence_probabilities(
      hyperentangled_state(BellIndex(3, 0, 0), kMatching), kMatching);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_outcomes(table, shots, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleOutcomes)->Arg(1000)->Arg(90000);

void BM_BuildDecodingTable(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_decoding_table(d, kMatching));
}
BENCHMARK(BM_BuildDecodingTable)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
