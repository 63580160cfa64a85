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

#include "mim/tools/sampling.hpp"

#include "mim/kinematics.hpp"
#include "mim/planner.hpp"

namespace mim::tools {

bool is_stoppable(const StateVector& x, const BoundVector& M) {
  const int n = x.order();
  if (n == 1) return M[1].admits(x.x(1));
  for (int k = 1; k <= n; ++k) {
    if (!M[k].admits(x.x(k))) return false;
  }
  const Problem brake{n - 1, x.head(n - 1), StateVector(n - 1), M.head(n - 1)};
  Trajectory t;
  try {
    t = plan(brake);
  } catch (const Error&) {
    return false;
  }
  StateVector s = x;
  for (const Segment& seg : t.segments) {
    if (segment_bound_check(s, seg.u, seg.duration, M)) return false;
    s = propagate(s, seg.u, seg.duration);
  }
  return true;
}

Problem random_feasible_problem(int order, const BoundVector& M,
                                std::mt19937_64& rng,
                                const SamplingOptions& options) {
  auto draw = [&]() {
    StateVector x(order);
    for (int k = 1; k <= order; ++k) {
      const double r = M.bounded(k) ? M[k].value() : options.unbounded_range;
      x.x(k) = std::uniform_real_distribution<double>(-r, r)(rng);
    }
    return x;
  };
  auto reversed = [order](const StateVector& x) {
    StateVector y = x;
    for (int k = 1; k <= order; ++k) {
      if ((order - k) % 2 == 1) y.x(k) = -y.x(k);
    }
    return y;
  };
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const StateVector x0 = draw();
    if (!is_stoppable(x0, M)) continue;
    for (int inner = 0; inner < options.max_attempts; ++inner) {
      const StateVector xf = draw();
      if (is_stoppable(reversed(xf), M)) return Problem{order, x0, xf, M};
    }
  }
  throw Error("no feasible problem found within the attempt budget");
}

}  // namespace mim::tools
