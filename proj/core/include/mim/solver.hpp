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

// Definite-condition systems of a signed switching law and their solution
// for per-stage motion times.
//
// Intermediate states are eliminated by forward substitution, so the only
// unknowns are stage durations. Each behavior (virtual-group members
// included) owns one duration slot. A behavior followed by a virtual group
// keeps its own slot for the virtual branch and borrows the slot of the
// group's final ride for its real duration; that final ride only contributes
// its riding conditions.

#ifndef MIM_SOLVER_HPP_
#define MIM_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mim/model.hpp"

namespace mim {

// One control per behavior and per virtual-group member, in written order.
// Tangent markers carry no control.
std::vector<double> stage_controls(const Asl& asl, double M0);

class StageSystem {
 public:
  struct Op {
    enum class Kind { kStage, kCondition, kFork, kJoin };
    Kind kind = Kind::kStage;
    std::size_t slot = 0;  // kStage
    double u = 0.0;        // kStage
    int k = 0;             // kCondition: x_k = value
    double value = 0.0;
    double scale = 1.0;
  };

  int order() const { return order_; }
  const Asl& asl() const { return asl_; }
  const StateVector& x0() const { return x0_; }
  const std::optional<StateVector>& xf() const { return xf_; }
  const BoundVector& bounds() const { return M_; }
  const std::vector<Op>& program() const { return program_; }

  std::size_t unknowns() const { return slots_; }
  std::size_t equations() const { return equations_; }

  // Counts of the formulation that keeps intermediate states as unknowns:
  // (n+1)N - n unknowns against nN propagation equations plus the riding
  // and marker conditions.
  std::size_t full_unknowns() const;
  std::size_t full_equations() const;

  // Real-path slots in traversal order, with their controls and the index
  // of the top-level element each belongs to.
  struct RealStage {
    std::size_t slot;
    double u;
    std::size_t element;
  };
  const std::vector<RealStage>& real_stages() const { return real_; }

  // Scaled residuals at durations t. When `jacobian` is given it receives
  // the equations() x unknowns() derivative, row-major.
  std::vector<double> residual(const std::vector<double>& t,
                               std::vector<double>* jacobian = nullptr) const;

 private:
  friend StageSystem assemble(const Asl&, const StateVector&,
                              const std::optional<StateVector>&,
                              const BoundVector&);

  int order_ = 0;
  Asl asl_;
  StateVector x0_;
  std::optional<StateVector> xf_;
  BoundVector M_;
  std::vector<Op> program_;
  std::vector<RealStage> real_;
  std::size_t slots_ = 0;
  std::size_t equations_ = 0;
  std::size_t conditions_ = 0;
};

// Builds the system of a signed law from x0. With xf the real path must end
// at xf; without it the law must end in a tangent marker whose conditions
// close the system. Throws InvariantError on structural mismatch, such as a
// riding condition on an unbounded state.
StageSystem assemble(const Asl& asl, const StateVector& x0,
                     const std::optional<StateVector>& xf,
                     const BoundVector& M);

struct SolveOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  int max_iterations = 100;
  bool damped = false;  // damped steps when the Newton step stalls
};

// Durations of the first converged seed (uniform split first, then random
// restarts), or nullopt.
std::optional<std::vector<double>> solve_times(const StageSystem& system,
                                               const SolveOptions& options = {});

// Every distinct converged solution over all seeds.
std::vector<std::vector<double>> solve_all(const StageSystem& system,
                                           const SolveOptions& options = {});

// The real path as a trajectory: one segment per real stage, zero-duration
// stages kept. Virtual branches are dropped.
Trajectory realize(const StageSystem& system, const std::vector<double>& t);

struct Infeasibility {
  enum class Kind { kNegativeDuration, kBound, kContinuity, kTerminal };
  Kind kind;
  std::size_t segment = 0;
  int k = 0;
  double t = 0.0;
  double value = 0.0;
  std::string describe() const;
};

// Durations >= 0, every segment within bounds, starts continuous, and the
// end state within eps of xf (scaled per component).
std::optional<Infeasibility> verify(const Trajectory& trajectory,
                                    double eps = 1e-9);

// Residual scale of state k: max(1, M_k) when bounded, otherwise
// max(1, |reference|).
double state_scale(const BoundVector& M, int k, double reference);

}  // namespace mim

#endif  // MIM_SOLVER_HPP_
