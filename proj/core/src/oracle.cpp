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

#include "mim/oracle.hpp"

#include <cmath>
#include <limits>

#include "mim/laws.hpp"
#include "mim/solver.hpp"

namespace mim::oracle {

double double_integrator_tf(const StateVector& x0, const StateVector& xf,
                            double M0, std::optional<double> M1) {
  const double v0 = x0.x(1);
  const double vf = xf.x(1);
  const double dp = xf.x(2) - x0.x(2);
  const double a = M0;
  if (v0 == vf && dp == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double sigma : {1.0, -1.0}) {
    // Accelerate toward sigma, then brake: peak velocity vp.
    const double radicand = sigma * a * dp + 0.5 * (v0 * v0 + vf * vf);
    if (radicand < 0.0) continue;
    const double vp = sigma * std::sqrt(radicand);
    const double t1 = sigma * (vp - v0) / a;
    const double t2 = sigma * (vp - vf) / a;
    const double slack = 1e-12 * std::max(1.0, std::abs(vp));
    if (t1 < -slack || t2 < -slack) continue;
    double total;
    if (M1 && std::abs(vp) > *M1) {
      const double vc = sigma * *M1;
      const double ta = sigma * (vc - v0) / a;
      const double tb = sigma * (vc - vf) / a;
      const double da = (vc * vc - v0 * v0) / (2.0 * sigma * a);
      const double db = (vc * vc - vf * vf) / (2.0 * sigma * a);
      const double tc = (dp - da - db) / vc;
      total = ta + std::max(0.0, tc) + tb;
    } else {
      total = std::max(0.0, t1) + std::max(0.0, t2);
    }
    best = std::min(best, total);
  }
  return best;
}

ExhaustiveResult exhaustive_tf(const Problem& problem,
                               const std::vector<Asl>* laws,
                               const ExhaustiveOptions& options) {
  problem.check(options.eps);
  if (problem.order > 3) throw Error("exhaustive search supports n <= 3");
  const std::vector<Asl>& set = laws ? *laws : enumerate_af(problem.order);
  SolveOptions solve;
  solve.restarts = options.multistarts - 1;
  std::optional<ExhaustiveResult> best;
  for (const Asl& law : set) {
    for (Sign last : {Sign::kPositive, Sign::kNegative}) {
      const Asl signed_law = assign_signs(law, last);
      std::optional<StageSystem> sys;
      try {
        sys = assemble(signed_law, problem.x0, problem.xf, problem.M);
      } catch (const InvariantError&) {
        continue;
      }
      for (const auto& t : solve_all(*sys, solve)) {
        const Trajectory traj = realize(*sys, t);
        if (verify(traj, options.eps)) continue;
        if (!best || traj.t_f < best->upper) {
          best = ExhaustiveResult{traj.t_f - solve.tolerance, traj.t_f,
                                  signed_law};
        }
      }
    }
  }
  if (!best) throw PlannerFailure("no law of the set is feasible");
  return *best;
}

}  // namespace mim::oracle
