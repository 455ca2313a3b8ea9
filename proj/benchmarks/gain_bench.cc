// Copyright 2026 The mmbeam Authors.
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

#include "mmbeam/channel_gain.h"

namespace mmbeam {
namespace {

void BM_SampleGain(benchmark::State& state, GainDistribution dist) {
  RngStream rng(1, StreamId{});
  for (auto _ : state) benchmark::DoNotOptimize(SampleGain(dist, rng));
}
BENCHMARK_CAPTURE(BM_SampleGain, gaussian, GainDistribution{TruncatedGaussian{8630.0, 200.0}});
BENCHMARK_CAPTURE(BM_SampleGain, exponential, GainDistribution{Exponential{1.0e4}});
BENCHMARK_CAPTURE(BM_SampleGain, loglogistic, GainDistribution{LogLogistic{3.89, 0.99}});

void BM_LinkGain(benchmark::State& state) {
  LinkGainQuery q;
  q.distance_m = 80.0;
  q.alignment = Alignment::kPartialTx;
  const GainTables& tables = GainTables::Builtin();
  RngStream rng(1, StreamId{});
  for (auto _ : state) benchmark::DoNotOptimize(LinkGain(q, tables, rng));
}
BENCHMARK(BM_LinkGain);

}  // namespace
}  // namespace mmbeam
