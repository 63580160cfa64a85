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

// Random feasible problems by rejection sampling.

#ifndef MIM_TOOLS_SAMPLING_HPP_
#define MIM_TOOLS_SAMPLING_HPP_

#include <random>

#include "mim/model.hpp"

namespace mim::tools {

struct SamplingOptions {
  double unbounded_range = 5.0;  // half-width for components without a bound
  int max_attempts = 10000;
};

// True when braking x to rest through the order-(n-1) plan keeps every
// component within M; such states can always be stopped.
bool is_stoppable(const StateVector& x, const BoundVector& M);

// Uniform draws inside the bound box until x0 and the time reversal of xf
// are both stoppable, which makes the problem feasible.
Problem random_feasible_problem(int order, const BoundVector& M,
                                std::mt19937_64& rng,
                                const SamplingOptions& options = {});

}  // namespace mim::tools

#endif  // MIM_TOOLS_SAMPLING_HPP_
