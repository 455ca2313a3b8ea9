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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mmbeam/clustering.h"

namespace mmbeam {
namespace {

void BM_CompleteLinkage(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> az(0.0, 360.0);
  std::vector<double> xs(static_cast<size_t>(state.range(0)));
  for (double& x : xs) x = az(gen);
  for (auto _ : state) benchmark::DoNotOptimize(CompleteLinkageCluster(xs, 10.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompleteLinkage)->RangeMultiplier(2)->Range(8, 256)->Complexity();

}  // namespace
}  // namespace mmbeam
