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

// The manifold-intercept planner.
//
// An order-n problem is reduced to its order-(n-1) sub-problem. When the
// start already lies on the manifold of states whose optimal trajectory is
// the lifted sub-trajectory, that trajectory is the answer. Otherwise the
// state descends toward the extreme cruise state of the highest bounded
// lower-order component and either cruises there or is intercepted by the
// manifold on the way. When the resulting trajectory breaks the position
// bound, a tangent-marker search picks the best trajectory that touches the
// bound.

#ifndef MIM_PLANNER_HPP_
#define MIM_PLANNER_HPP_

#include <optional>

#include "mim/model.hpp"
#include "mim/solver.hpp"

namespace mim {

struct PlannerOptions {
  double eps_proper = 1e-9;           // scaled Proper tolerance
  int intercept_samples = 64;         // sign-change grid per segment
  double intercept_tolerance = 1e-11; // bisection width, seconds
  double feasibility_eps = 1e-9;
  SolveOptions solve;
};

struct Classification {
  enum class Kind { kHigher, kLower, kProper };
  Kind kind;
  double proper_position;
};

// The position that places x0 on the order-(n-1) optimal manifold of
// (xf, M). Requires order >= 2.
double proper_position(const StateVector& x0, const StateVector& xf,
                       const BoundVector& M, const PlannerOptions& options = {});

Classification classify(const StateVector& x0, const StateVector& xf,
                        const BoundVector& M, const PlannerOptions& options = {});

// Time-optimal (n <= 3) or near-optimal trajectory. Throws InfeasibleProblem
// for boundary states outside the bounds and PlannerFailure when no law
// could be realized.
Trajectory plan(const Problem& problem, const PlannerOptions& options = {});

// Bang-bang trajectory with every state bound removed (M_0 kept).
Trajectory plan_unconstrained(const Problem& problem,
                              const PlannerOptions& options = {});

// Earliest time along `prefix` at which its state reaches the order-(n-1)
// manifold of (xf, M), or nullopt if it never does before the prefix ends.
std::optional<double> intercept_time(const Trajectory& prefix,
                                     const StateVector& xf,
                                     const BoundVector& M,
                                     const PlannerOptions& options = {});

// Best trajectory that reaches a tangent marker on x_n through a law of
// AF_d (d = 2, 4, ...) and then plans the rest ignoring M_n. Searched when
// the position-free plan breaks M_n. Throws PlannerFailure listing the
// attempted laws when none is feasible.
Trajectory tangent_marker_search(const Problem& problem,
                                 const PlannerOptions& options = {});

}  // namespace mim

#endif  // MIM_PLANNER_HPP_
