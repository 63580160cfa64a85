// Copyright 2026 The MIM Planner Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mim/planner.hpp"
#include "mim/tools/sampling.hpp"

namespace {

using namespace mim;

std::vector<Problem> problems(int n, int count) {
  const BoundVector M = n == 3 ? BoundVector{1.0, 1.0, 1.5, 4.0}
                               : BoundVector{1.0, 1.0, 1.5, 4.0, 20.0};
  std::mt19937_64 rng(7);
  std::vector<Problem> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(tools::random_feasible_problem(n, M, rng));
  }
  return out;
}

void BM_Plan(benchmark::State& state) {
  const auto set = problems(static_cast<int>(state.range(0)), 32);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan(set[i++ % set.size()]));
  }
}
BENCHMARK(BM_Plan)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_JerkLimitedReference(benchmark::State& state) {
  const Problem p{3, StateVector{1.0, -0.375, 4.0}, StateVector{0.0, 0.0, 0.0},
                  BoundVector{1.0, 1.0, 1.5, 4.0}};
  for (auto _ : state) benchmark::DoNotOptimize(plan(p));
}
BENCHMARK(BM_JerkLimitedReference)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
