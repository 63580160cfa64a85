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

#include "mim/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "mim/kinematics.hpp"

namespace mim {

double state_scale(const BoundVector& M, int k, double reference) {
  if (k <= M.order() && M.bounded(k)) return std::max(1.0, M[k].value());
  return std::max(1.0, std::abs(reference));
}

std::vector<double> stage_controls(const Asl& asl, double M0) {
  std::vector<double> out;
  auto control = [M0](const Behavior& b) {
    return b.value == 0 ? to_int(b.sign) * M0 : 0.0;
  };
  for (const AslElement& e : asl.elements) {
    if (const auto* b = std::get_if<Behavior>(&e)) {
      out.push_back(control(*b));
    } else if (const auto* g = std::get_if<VirtualGroup>(&e)) {
      for (const GroupMember& m : g->members) {
        if (const auto* mb = std::get_if<Behavior>(&m)) {
          out.push_back(control(*mb));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly.

namespace {

class Assembler {
 public:
  Assembler(int order, const BoundVector& M, const std::optional<StateVector>& xf)
      : order_(order), M_(M), xf_(xf) {}

  std::vector<StageSystem::Op> program;
  std::size_t slots = 0;
  std::size_t conditions = 0;

  double control(const Behavior& b) const {
    return b.value == 0 ? to_int(b.sign) * M_.input() : 0.0;
  }

  void require_signed(const Behavior& b) const {
    if (b.sign == Sign::kUnassigned) {
      throw InvariantError("solver requires a signed switching law");
    }
    if (b.value < 0 || b.value > order_) {
      throw InvariantError("behavior value " + std::to_string(b.value) +
                           " exceeds the system order");
    }
  }

  void condition(int k, double value) {
    StageSystem::Op op;
    op.kind = StageSystem::Op::Kind::kCondition;
    op.k = k;
    op.value = value;
    op.scale = state_scale(M_, k, xf_ ? xf_->x(k) : 0.0);
    program.push_back(op);
  }

  // x_top = sign*M_top with the `zeros` states just below it at zero.
  void bound_touch(const Behavior& b, int zeros) {
    if (!M_.bounded(b.value)) {
      throw InvariantError("riding condition on unbounded state x_" +
                           std::to_string(b.value));
    }
    condition(b.value, to_int(b.sign) * M_[b.value].value());
    for (int j = 1; j <= zeros; ++j) condition(b.value - j, 0.0);
    conditions += static_cast<std::size_t>(zeros) + 1;
  }

  void riding(const Behavior& b) {
    require_signed(b);
    if (b.value > 0) bound_touch(b, b.value - 1);
  }

  void marker(const TangentMarker& m) {
    require_signed(m.behavior);
    if (m.degree < 1 || m.degree > m.behavior.value) {
      throw InvariantError("malformed tangent marker");
    }
    bound_touch(m.behavior, m.degree - 1);
  }

  std::size_t stage(double u) {
    const std::size_t slot = slots++;
    stage_on(slot, u);
    return slot;
  }

  void stage_on(std::size_t slot, double u) {
    StageSystem::Op op;
    op.kind = StageSystem::Op::Kind::kStage;
    op.slot = slot;
    op.u = u;
    program.push_back(op);
  }

  void mark(StageSystem::Op::Kind kind) {
    StageSystem::Op op;
    op.kind = kind;
    program.push_back(op);
  }

 private:
  int order_;
  const BoundVector& M_;
  const std::optional<StateVector>& xf_;
};

}  // namespace

StageSystem assemble(const Asl& asl, const StateVector& x0,
                     const std::optional<StateVector>& xf,
                     const BoundVector& M) {
  const int n = x0.order();
  if (xf && xf->order() != n) throw InvariantError("xf order mismatch");
  if (M.order() < n) throw InvariantError("bound vector shorter than order");
  if (asl.empty()) throw InvariantError("empty switching law");

  StageSystem sys;
  sys.order_ = n;
  sys.asl_ = asl;
  sys.x0_ = x0;
  sys.xf_ = xf;
  sys.M_ = M;

  Assembler a(n, M, xf);
  const auto& els = asl.elements;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const AslElement& e = els[i];
    if (const auto* b = std::get_if<Behavior>(&e)) {
      a.riding(*b);
      const double u = a.control(*b);
      const auto* g = i + 1 < els.size()
                          ? std::get_if<VirtualGroup>(&els[i + 1])
                          : nullptr;
      if (g == nullptr) {
        sys.real_.push_back({a.stage(u), u, i});
        continue;
      }
      if (g->members.empty() || !std::holds_alternative<Behavior>(g->members.back())) {
        throw InvariantError("virtual group must end with a behavior");
      }
      a.mark(StageSystem::Op::Kind::kFork);
      a.stage(u);
      std::size_t real_slot = 0;
      for (std::size_t j = 0; j < g->members.size(); ++j) {
        const GroupMember& m = g->members[j];
        if (const auto* mm = std::get_if<TangentMarker>(&m)) {
          a.marker(*mm);
          continue;
        }
        const Behavior& mb = std::get<Behavior>(m);
        a.riding(mb);
        if (j + 1 < g->members.size()) {
          a.stage(a.control(mb));
        } else {
          real_slot = a.slots++;
        }
      }
      a.mark(StageSystem::Op::Kind::kJoin);
      a.stage_on(real_slot, u);
      sys.real_.push_back({real_slot, u, i});
      ++i;
    } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
      a.marker(*m);
    } else {
      throw InvariantError("virtual group must follow a behavior");
    }
  }

  std::size_t terminal = 0;
  if (xf) {
    for (int k = 1; k <= n; ++k) a.condition(k, xf->x(k));
    terminal = static_cast<std::size_t>(n);
  } else if (!std::holds_alternative<TangentMarker>(els.back())) {
    throw InvariantError("a system without xf must end in a tangent marker");
  }

  sys.program_ = std::move(a.program);
  sys.slots_ = a.slots;
  sys.conditions_ = a.conditions;
  sys.equations_ = a.conditions + terminal;
  return sys;
}

std::size_t StageSystem::full_unknowns() const {
  return static_cast<std::size_t>(order_ + 1) * slots_ -
         static_cast<std::size_t>(order_);
}

std::size_t StageSystem::full_equations() const {
  return static_cast<std::size_t>(order_) * slots_ + conditions_;
}

std::vector<double> StageSystem::residual(const std::vector<double>& t,
                                          std::vector<double>* jacobian) const {
  const int n = order_;
  const std::size_t N = slots_;
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> x(x0_.values().begin(), x0_.values().end());
  std::vector<double> J(jacobian ? un * N : 0, 0.0);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> stack;
  std::vector<double> r;
  r.reserve(equations_);
  if (jacobian) jacobian->assign(equations_ * N, 0.0);

  std::vector<double> powers(un + 1);
  std::vector<double> y(un);
  std::vector<double> JY(J.size());
  for (const Op& op : program_) {
    switch (op.kind) {
      case Op::Kind::kStage: {
        const double dt = t[op.slot];
        powers[0] = 1.0;
        for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * dt / i;
        for (int k = 1; k <= n; ++k) {
          double v = op.u * powers[k];
          for (int i = 0; i < k; ++i) v += x[k - i - 1] * powers[i];
          y[k - 1] = v;
        }
        if (jacobian) {
          for (int k = 1; k <= n; ++k) {
            for (std::size_t c = 0; c < N; ++c) {
              double v = 0.0;
              for (int i = 0; i < k; ++i) v += powers[i] * J[(k - i - 1) * N + c];
              JY[(k - 1) * N + c] = v;
            }
          }
          JY[op.slot] += op.u;
          for (int k = 2; k <= n; ++k) JY[(k - 1) * N + op.slot] += y[k - 2];
          J.swap(JY);
        }
        x.swap(y);
        break;
      }
      case Op::Kind::kCondition: {
        const std::size_t row = r.size();
        r.push_back((x[op.k - 1] - op.value) / op.scale);
        if (jacobian) {
          for (std::size_t c = 0; c < N; ++c) {
            (*jacobian)[row * N + c] = J[(op.k - 1) * N + c] / op.scale;
          }
        }
        break;
      }
      case Op::Kind::kFork:
        stack.emplace_back(x, J);
        break;
      case Op::Kind::kJoin:
        x = std::move(stack.back().first);
        J = std::move(stack.back().second);
        stack.pop_back();
        break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Newton.

namespace {

double max_abs(const std::vector<double>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

double squared(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

std::optional<std::vector<double>> newton(const StageSystem& sys,
                                          std::vector<double> t,
                                          const SolveOptions& options) {
  const std::size_t N = sys.unknowns();
  const std::size_t m = sys.equations();
  std::vector<double> jac;
  std::vector<double> r = sys.residual(t, &jac);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (max_abs(r) < options.tolerance) return t;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        A(jac.data(), static_cast<Eigen::Index>(m),
          static_cast<Eigen::Index>(N));
    Eigen::Map<const Eigen::VectorXd> b(r.data(), static_cast<Eigen::Index>(m));
    const Eigen::VectorXd step = A.colPivHouseholderQr().solve(-b);
    if (!step.allFinite()) return std::nullopt;

    const double merit = squared(r);
    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> trial(N);
    std::vector<double> jt;
    std::vector<double> rt;
    while (alpha > 1e-10) {
      for (std::size_t i = 0; i < N; ++i) {
        trial[i] = std::max(0.0, t[i] + alpha * step[static_cast<Eigen::Index>(i)]);
      }
      rt = sys.residual(trial, &jt);
      if (squared(rt) < (1.0 - 1e-4 * alpha) * merit) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    // Damped Gauss-Newton steps when the full step has no descent.
    if (!accepted && options.damped) {
      const Eigen::MatrixXd H = A.transpose() * A;
      const Eigen::VectorXd g = A.transpose() * b;
      for (double lambda = 1e-6; lambda < 1e8 && !accepted; lambda *= 10.0) {
        Eigen::MatrixXd D = H;
        D.diagonal().array() += lambda * (1.0 + H.diagonal().array());
        const Eigen::VectorXd d = D.ldlt().solve(-g);
        if (!d.allFinite()) break;
        for (std::size_t i = 0; i < N; ++i) {
          trial[i] = std::max(0.0, t[i] + d[static_cast<Eigen::Index>(i)]);
        }
        rt = sys.residual(trial, &jt);
        accepted = squared(rt) < merit;
      }
    }
    if (!accepted) return max_abs(r) < options.tolerance ? std::optional(t) : std::nullopt;
    t.swap(trial);
    r.swap(rt);
    jac.swap(jt);
  }
  if (max_abs(r) < options.tolerance) return t;
  return std::nullopt;
}

// Rough total motion time: the time to cover each component's gap at full
// input, and to reach any bound the law rides.
double horizon(const StageSystem& sys) {
  const int n = sys.order();
  const double M0 = sys.bounds().input();
  double tau = 0.0;
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    factorial *= k;
    double gap = std::abs(sys.x0().x(k));
    if (sys.xf()) gap = std::abs(sys.xf()->x(k) - sys.x0().x(k));
    tau = std::max(tau, std::pow(2.0 * factorial * gap / M0, 1.0 / k));
    if (sys.bounds().bounded(k)) {
      tau = std::max(tau, std::pow(factorial * sys.bounds()[k].value() / M0,
                                   1.0 / k));
    }
  }
  return std::max(tau, 1e-3);
}

std::vector<std::vector<double>> seeds(const StageSystem& sys,
                                       const SolveOptions& options) {
  const std::size_t N = sys.unknowns();
  const double tau = horizon(sys);
  std::vector<std::vector<double>> out;
  out.emplace_back(N, tau / static_cast<double>(N));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> scale(std::log(0.1), std::log(4.0));
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> s(N);
    for (double& v : s) v = tau / static_cast<double>(N) * std::exp(scale(rng));
    out.push_back(std::move(s));
  }
  return out;
}

bool same_solution(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-7 * std::max(1.0, std::abs(a[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<double>> solve_times(const StageSystem& system,
                                               const SolveOptions& options) {
  if (system.unknowns() == 0) {
    if (max_abs(system.residual({})) < options.tolerance) {
      return std::vector<double>{};
    }
    return std::nullopt;
  }
  for (const auto& seed : seeds(system, options)) {
    if (auto t = newton(system, seed, options)) return t;
  }
  return std::nullopt;
}

std::vector<std::vector<double>> solve_all(const StageSystem& system,
                                           const SolveOptions& options) {
  std::vector<std::vector<double>> found;
  if (system.unknowns() == 0) {
    if (max_abs(system.residual({})) < options.tolerance) found.emplace_back();
    return found;
  }
  for (const auto& seed : seeds(system, options)) {
    auto t = newton(system, seed, options);
    if (!t) continue;
    const bool duplicate = std::any_of(
        found.begin(), found.end(),
        [&](const std::vector<double>& f) { return same_solution(f, *t); });
    if (!duplicate) found.push_back(std::move(*t));
  }
  return found;
}

Trajectory realize(const StageSystem& system, const std::vector<double>& t) {
  Trajectory traj;
  traj.asl = system.asl();
  StateVector x = system.x0();
  for (const auto& stage : system.real_stages()) {
    const double d = std::max(0.0, t[stage.slot]);
    traj.segments.push_back({stage.u, d, x});
    x = propagate(x, stage.u, d);
    traj.t_f += d;
  }
  traj.problem = Problem{system.order(), system.x0(),
                         system.xf() ? *system.xf() : x, system.bounds()};
  return traj;
}

std::string Infeasibility::describe() const {
  switch (kind) {
    case Kind::kNegativeDuration:
      return "segment " + std::to_string(segment) + " has negative duration " +
             std::to_string(value);
    case Kind::kBound:
      return "segment " + std::to_string(segment) + " violates the bound on x_" +
             std::to_string(k) + " (value " + std::to_string(value) +
             " at t=" + std::to_string(t) + ")";
    case Kind::kContinuity:
      return "segment " + std::to_string(segment) +
             " does not start where its predecessor ends (x_" +
             std::to_string(k) + ")";
    case Kind::kTerminal:
      return "terminal state misses the target in x_" + std::to_string(k) +
             " by " + std::to_string(value);
  }
  return "infeasible";
}

std::optional<Infeasibility> verify(const Trajectory& trajectory, double eps) {
  const Problem& p = trajectory.problem;
  const int n = p.order;
  const BoundVector input_and_states = p.M;
  StateVector x = p.x0;
  for (std::size_t i = 0; i < trajectory.segments.size(); ++i) {
    const Segment& s = trajectory.segments[i];
    if (s.duration < -1e-12) {
      return Infeasibility{Infeasibility::Kind::kNegativeDuration, i, 0, 0.0,
                           s.duration};
    }
    if (std::abs(s.u) > p.M.input() + eps) {
      return Infeasibility{Infeasibility::Kind::kBound, i, 0, 0.0, s.u};
    }
    for (int k = 1; k <= n; ++k) {
      const double scale = state_scale(p.M, k, x.x(k));
      if (std::abs(s.start.x(k) - x.x(k)) > eps * scale) {
        return Infeasibility{Infeasibility::Kind::kContinuity, i, k, 0.0,
                             s.start.x(k) - x.x(k)};
      }
    }
    const double d = std::max(0.0, s.duration);
    if (auto v = segment_bound_check(s.start, s.u, d, input_and_states, eps)) {
      return Infeasibility{Infeasibility::Kind::kBound, i, v->k, v->t, v->value};
    }
    x = propagate(s.start, s.u, d);
  }
  for (int k = 1; k <= n; ++k) {
    const double err = x.x(k) - p.xf.x(k);
    if (std::abs(err) > eps * state_scale(p.M, k, p.xf.x(k))) {
      return Infeasibility{Infeasibility::Kind::kTerminal,
                           trajectory.segments.size(), k, trajectory.t_f, err};
    }
  }
  return std::nullopt;
}

}  // namespace mim
