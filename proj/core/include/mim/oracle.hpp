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

// Slow reference solvers that share no code with the planner: the classical
// double-integrator closed form and brute force over a law set.

#ifndef MIM_ORACLE_HPP_
#define MIM_ORACLE_HPP_

#include <optional>
#include <vector>

#include "mim/model.hpp"

namespace mim::oracle {

// Minimum time between (velocity, position) states under |u| <= M0 and,
// when given, |velocity| <= M1.
double double_integrator_tf(const StateVector& x0, const StateVector& xf,
                            double M0, std::optional<double> M1);

struct ExhaustiveResult {
  double lower = 0.0;  // upper minus the solver tolerance
  double upper = 0.0;  // best verified t_f
  Asl law;             // signed law of the best trajectory
};

struct ExhaustiveOptions {
  int multistarts = 32;
  double eps = 1e-9;
};

// Every law of `laws` (default: AF_n) with both sign patterns, solved from
// many seeds, realized and verified; the fastest feasible one wins. n <= 3.
// Throws InfeasibleProblem for out-of-bounds input and PlannerFailure when
// no law is feasible.
ExhaustiveResult exhaustive_tf(const Problem& problem,
                               const std::vector<Asl>* laws = nullptr,
                               const ExhaustiveOptions& options = {});

}  // namespace mim::oracle

#endif  // MIM_ORACLE_HPP_
