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

#include "mim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

#include "mim/kinematics.hpp"
#include "mim/laws.hpp"

namespace mim {

namespace {

// A stage of a plan: constant control held for a duration, tagged with the
// top-level law element it realizes. States are implicit, so one plan
// serves every lifting of its start state.
struct Piece {
  double u;
  double duration;
  std::size_t element;
};

struct Plan {
  std::vector<Piece> pieces;
  Asl asl;
  double t_f = 0.0;
};

Plan negate(Plan p) {
  for (Piece& piece : p.pieces) piece.u = piece.u == 0.0 ? 0.0 : -piece.u;
  p.asl = negated(p.asl);
  return p;
}

StateVector run(StateVector x, const Plan& p) {
  for (const Piece& piece : p.pieces) x = propagate(x, piece.u, piece.duration);
  return x;
}

// Appends `tail` to `head`, shifting its element tags.
void append(Plan& head, const Plan& tail) {
  const std::size_t offset = head.asl.size();
  for (Piece piece : tail.pieces) {
    piece.element += offset;
    head.pieces.push_back(piece);
  }
  head.asl.elements.insert(head.asl.elements.end(), tail.asl.elements.begin(),
                           tail.asl.elements.end());
  head.t_f += tail.t_f;
}

bool first_nonzero_negative(const StateVector& a, const StateVector& b) {
  for (const StateVector* s : {&a, &b}) {
    for (double v : s->values()) {
      if (v != 0.0) return v < 0.0;
    }
  }
  return false;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

struct KeyHash {
  std::size_t operator()(const std::vector<double>& key) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (double v : key) {
      h ^= std::hash<double>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Root of f on [lo, hi] with f(lo) < 0 <= f(hi), by Illinois regula falsi.
// Returns a point where f >= 0 within `tol` of the crossing.
template <typename F>
double crossing(F&& f, double lo, double flo, double hi, double fhi,
                double tol) {
  int side = 0;
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double c = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
    const double fc = f(c);
    if (fc >= 0.0) {
      if (c - lo <= tol) return c;
      hi = c;
      fhi = fc;
      if (side == 1) flo *= 0.5;
      side = 1;
      if (fc == 0.0) return c;
    } else {
      if (hi - c <= tol) {
        // The crossing is within tol above c; settle on the feasible side.
        return hi;
      }
      lo = c;
      flo = fc;
      if (side == -1) fhi *= 0.5;
      side = -1;
    }
  }
  return hi;
}

// Drops empty behaviors and joins adjacent equal ones left by a spliced law.
Plan merge_repeats(const Plan& p) {
  Plan out;
  std::vector<double> time(p.asl.size(), 0.0);
  std::vector<bool> used(p.asl.size(), false);
  for (const Piece& piece : p.pieces) {
    time[piece.element] += piece.duration;
    used[piece.element] = true;
  }
  std::vector<std::size_t> index(p.asl.size());
  std::vector<bool> dropped(p.asl.size(), false);
  for (std::size_t i = 0; i < p.asl.size(); ++i) {
    const AslElement& el = p.asl.elements[i];
    const auto* b = std::get_if<Behavior>(&el);
    if (b && used[i] && time[i] <= 1e-12 && !out.asl.elements.empty()) {
      dropped[i] = true;
      continue;
    }
    const auto* prev = out.asl.elements.empty()
                           ? nullptr
                           : std::get_if<Behavior>(&out.asl.elements.back());
    if (b && prev && *b == *prev) {
      index[i] = out.asl.size() - 1;
      continue;
    }
    out.asl.elements.push_back(el);
    index[i] = out.asl.size() - 1;
  }
  for (const Piece& piece : p.pieces) {
    if (dropped[piece.element]) continue;
    const std::size_t e = index[piece.element];
    if (!out.pieces.empty() && out.pieces.back().element == e) {
      out.pieces.back().duration += piece.duration;
    } else {
      out.pieces.push_back({piece.u, piece.duration, e});
    }
    out.t_f += piece.duration;
  }
  out.asl = simplify(out.asl);
  return out;
}

std::string attempted_list(const std::vector<std::string>& laws) {
  std::string out;
  for (const std::string& s : laws) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out.empty() ? "none" : out;
}

// Per-call planning state: options, the full bound vector, and the sub-plan
// memo.
class Context {
 public:
  Context(const BoundVector& M, const PlannerOptions& options)
      : M_(M), options_(options) {}

  // Order k = x0.order(), all of M_1..M_k enforced.
  const Plan& plan(const StateVector& x0, const StateVector& xf) {
    const auto key = make_key(0, x0, xf);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Plan p = compute_plan(x0, xf);
    return memo_.emplace(key, std::move(p)).first->second;
  }

  // M_k ignored.
  const Plan& plan_free(const StateVector& x0, const StateVector& xf) {
    const auto key = make_key(1, x0, xf);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Plan p = compute_free(x0, xf);
    return memo_.emplace(key, std::move(p)).first->second;
  }

  double proper_position(const StateVector& x, const StateVector& xf) {
    const int k = x.order();
    if (k == 2) {
      // The first-order sub-plan is a single bang; integrate it directly.
      const double delta = xf.x(1) - x.x(1);
      const double t = std::abs(delta) / M_.input();
      return xf.x(2) - (x.x(1) + 0.5 * delta) * t;
    }
    const StateVector head = x.head(k - 1);
    const Plan& sub = plan(head, xf.head(k - 1));
    return xf.x(k) - run(head.resized(k), sub).x(k);
  }

  double scale(int k, double reference) const {
    return M_.bounded(k) ? std::max(1.0, M_[k].value())
                         : std::max(1.0, std::abs(reference));
  }

  // Order k problem reached from the start with all of M_1..M_k, used as
  // the public entry for unconstrained planning too.
  Plan unconstrained(const StateVector& x0, const StateVector& xf);

  Plan marker_search(const StateVector& x0, const StateVector& xf);

  std::optional<std::pair<std::size_t, double>> intercept(
      const StateVector& x0, const Plan& prefix, const StateVector& xf);

  const PlannerOptions& options() const { return options_; }

 private:
  using Key = std::vector<double>;

  Key make_key(int kind, const StateVector& x0, const StateVector& xf) const {
    Key key;
    key.reserve(2 + 2 * static_cast<std::size_t>(x0.order()));
    key.push_back(kind);
    key.push_back(x0.order());
    for (double v : x0.values()) key.push_back(round12(v));
    for (double v : xf.values()) key.push_back(round12(v));
    return key;
  }

  Plan first_order(const StateVector& x0, const StateVector& xf) const {
    Plan p;
    const double delta = xf.x(1) - x0.x(1);
    if (delta == 0.0) return p;
    const Sign s = sign_of(delta);
    const double M0 = M_.input();
    p.pieces.push_back({to_int(s) * M0, std::abs(delta) / M0, 0});
    p.asl.elements.push_back(Behavior{0, s});
    p.t_f = std::abs(delta) / M0;
    return p;
  }

  // Order 2 without a velocity bound: a bang to the switching curve, then
  // the opposite bang.
  Plan double_bang(const StateVector& x0, const StateVector& xf) {
    const double p_star = proper_position(x0, xf);
    const double diff = x0.x(2) - p_star;
    if (std::abs(diff) <= options_.eps_proper * scale(2, p_star)) {
      return first_order(x0.head(1), xf.head(1));
    }
    if (diff > 0.0) return negate(double_bang(-x0, -xf));
    const double a = M_.input();
    const double v0 = x0.x(1), vf = xf.x(1);
    const double peak = std::sqrt(
        std::max(0.0, a * (xf.x(2) - x0.x(2)) + 0.5 * (v0 * v0 + vf * vf)));
    Plan p;
    for (const auto& [u, t] : {std::pair{a, std::max(0.0, peak - v0) / a},
                               std::pair{-a, std::max(0.0, peak - vf) / a}}) {
      if (t <= 0.0) continue;
      p.pieces.push_back({u, t, p.asl.size()});
      p.asl.elements.push_back(Behavior{0, sign_of(u)});
      p.t_f += t;
    }
    return p;
  }

  bool breaks_bound(const StateVector& x0, const Plan& p, int k) const {
    std::vector<Bound> only(static_cast<std::size_t>(k) + 1);
    only[0] = M_[0];
    only[static_cast<std::size_t>(k)] = M_[k];
    const BoundVector check(std::move(only));
    StateVector x = x0;
    for (const Piece& piece : p.pieces) {
      if (segment_bound_check(x, piece.u, piece.duration, check,
                              options_.feasibility_eps)) {
        return true;
      }
      x = propagate(x, piece.u, piece.duration);
    }
    return false;
  }

  Plan compute_plan(const StateVector& x0, const StateVector& xf) {
    const int k = x0.order();
    if (k == 1) return first_order(x0, xf);
    Plan p = plan_free(x0, xf);
    if (M_.bounded(k) && breaks_bound(x0, p, k)) return marker_search(x0, xf);
    return p;
  }

  Plan compute_free(const StateVector& x0, const StateVector& xf) {
    const int k = x0.order();
    if (k == 1) return first_order(x0, xf);
    bool interior_free = true;
    for (int j = 1; j < k; ++j) interior_free = interior_free && !M_.bounded(j);
    if (interior_free) return unconstrained(x0, xf);

    const double p_star = proper_position(x0, xf);
    const double diff = x0.x(k) - p_star;
    if (std::abs(diff) <= options_.eps_proper * scale(k, p_star)) {
      return plan(x0.head(k - 1), xf.head(k - 1));
    }
    if (diff > 0.0) return negate(lower_branch(-x0, -xf));
    return lower_branch(x0, xf);
  }

  // The intercept can land on a jump of the proper position, where the
  // lifted sub-plan no longer ends at xf.
  bool misses(const StateVector& x0, const Plan& p, const StateVector& xf) const {
    const StateVector end = run(x0, p);
    for (int j = 1; j <= x0.order(); ++j) {
      if (std::abs(end.x(j) - xf.x(j)) > 1e-7 * scale(j, xf.x(j))) return true;
    }
    return false;
  }

  std::optional<Plan> via_search(const StateVector& x0, const StateVector& xf);

  std::optional<Plan> splice_search(const StateVector& x0, const Plan& descent,
                                    int cruise, const StateVector& xf);

  Plan lower_branch(const StateVector& x0, const StateVector& xf);

  BoundVector M_;
  PlannerOptions options_;
  std::unordered_map<Key, Plan, KeyHash> memo_;
};

Plan Context::unconstrained(const StateVector& x0, const StateVector& xf) {
  const int k = x0.order();
  Plan best;
  if (x0 == xf) return best;
  if (k == 1) return first_order(x0, xf);
  if (k == 2) return double_bang(x0, xf);
  const BoundVector free = M_.head(k).input_only();
  bool found = false;
  Asl law;
  for (int i = 0; i < k; ++i) law.elements.push_back(Behavior{0, Sign::kUnassigned});
  SolveOptions solve = options_.solve;
  solve.damped = true;
  for (int restarts : {16, 64, 256}) {
    if (found) break;
    solve.restarts = std::max(options_.solve.restarts, restarts);
    for (Sign last : {Sign::kPositive, Sign::kNegative}) {
      const StageSystem sys = assemble(assign_signs(law, last), x0, xf, free);
      for (const auto& t : solve_all(sys, solve)) {
        Trajectory traj = realize(sys, t);
        if (verify(traj, options_.feasibility_eps)) continue;
        if (found && traj.t_f >= best.t_f) continue;
        // Merge stages of equal control, dropping empty ones.
        Plan p;
        for (const Segment& s : traj.segments) {
          if (s.duration <= 0.0) continue;
          if (!p.pieces.empty() && p.pieces.back().u == s.u) {
            p.pieces.back().duration += s.duration;
          } else {
            p.pieces.push_back({s.u, s.duration, p.asl.size()});
            p.asl.elements.push_back(Behavior{0, sign_of(s.u)});
          }
        }
        p.t_f = traj.t_f;
        best = std::move(p);
        found = true;
      }
    }
  }
  if (!found) {
    throw PlannerFailure("no bang-bang solution of order " +
                         std::to_string(k) + " converged");
  }
  return best;
}

std::optional<std::pair<std::size_t, double>> Context::intercept(
    const StateVector& x0, const Plan& prefix, const StateVector& xf) {
  const int k = x0.order();
  const double p0 = proper_position(x0, xf);
  const double g0 = x0.x(k) - p0;
  if (std::abs(g0) <= options_.eps_proper * scale(k, p0)) {
    return std::pair<std::size_t, double>{0, 0.0};
  }
  // Oriented so the start is below the manifold.
  const double side = g0 < 0.0 ? 1.0 : -1.0;
  auto g = [&](const StateVector& x) {
    return side * (x.x(k) - proper_position(x, xf));
  };
  const double tol = options_.intercept_tolerance;
  const int samples = std::max(1, options_.intercept_samples);
  StateVector start = x0;
  double g_prev = side * g0;
  for (std::size_t j = 0; j < prefix.pieces.size(); ++j) {
    const Piece& piece = prefix.pieces[j];
    double t_prev = 0.0;
    for (int s = 1; s <= samples && piece.duration > 0.0; ++s) {
      const double t = piece.duration * s / samples;
      const double value = g(propagate(start, piece.u, t));
      if (value >= 0.0) {
        auto along = [&](double s2) { return g(propagate(start, piece.u, s2)); };
        return std::pair<std::size_t, double>{
            j, crossing(along, t_prev, g_prev, t, value, tol)};
      }
      t_prev = t;
      g_prev = value;
    }
    start = propagate(start, piece.u, piece.duration);
  }
  return std::nullopt;
}

Plan Context::lower_branch(const StateVector& x0, const StateVector& xf) {
  const int k = x0.order();
  int m = k - 1;
  while (m >= 1 && !M_.bounded(m)) --m;
  StateVector cruise(m);
  cruise.x(m) = M_[m].value();
  const Plan descent = plan(x0.head(m), cruise);

  Plan out;
  StateVector reached;
  if (auto hit = intercept(x0, descent, xf)) {
    const auto [j, tau] = *hit;
    const std::size_t e = descent.pieces[j].element;
    StateVector x = x0;
    for (std::size_t i = 0; i < j; ++i) {
      out.pieces.push_back(descent.pieces[i]);
      out.t_f += descent.pieces[i].duration;
      x = propagate(x, descent.pieces[i].u, descent.pieces[i].duration);
    }
    out.pieces.push_back({descent.pieces[j].u, tau, e});
    out.t_f += tau;
    reached = propagate(x, descent.pieces[j].u, tau);
    Asl with_group;
    with_group.elements.assign(
        descent.asl.elements.begin(),
        descent.asl.elements.begin() + static_cast<std::ptrdiff_t>(e) + 1);
    VirtualGroup group;
    for (std::size_t i = e + 1; i < descent.asl.size(); ++i) {
      const AslElement& el = descent.asl.elements[i];
      if (const auto* b = std::get_if<Behavior>(&el)) {
        group.members.push_back(*b);
      } else if (const auto* mk = std::get_if<TangentMarker>(&el)) {
        group.members.push_back(*mk);
      }
    }
    group.members.push_back(Behavior{m, Sign::kPositive});
    with_group.elements.push_back(std::move(group));
    out.asl = simplify(with_group);
  } else {
    out = descent;
    const StateVector end = run(x0, descent);
    double t1 = 0.0;
    if (m == k - 1) {
      t1 = (proper_position(end, xf) - end.x(k)) / M_[m].value();
    } else {
      auto g = [&](double t) {
        const StateVector x = propagate(end, 0.0, t);
        return x.x(k) - proper_position(x, xf);
      };
      double lo = 0.0;
      double glo = g(lo);
      double hi = std::max(1.0, descent.t_f);
      double ghi = g(hi);
      int expansions = 0;
      while (ghi < 0.0) {
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        ghi = g(hi);
        if (++expansions > 60) {
          throw PlannerFailure("cruise on x_" + std::to_string(m) +
                               " never reaches the order-" +
                               std::to_string(k - 1) + " manifold");
        }
      }
      t1 = crossing(g, lo, glo, hi, ghi, options_.intercept_tolerance);
    }
    t1 = std::max(0.0, t1);
    out.pieces.push_back({0.0, t1, out.asl.size()});
    out.asl.elements.push_back(Behavior{m, Sign::kPositive});
    out.t_f += t1;
    reached = propagate(end, 0.0, t1);
  }
  append(out, plan(reached.head(k - 1), xf.head(k - 1)));
  if (misses(x0, out, xf)) {
    std::optional<Plan> best = splice_search(x0, descent, m, xf);
    if (m == k - 1) {
      if (auto via = via_search(x0, xf); via && (!best || via->t_f < best->t_f)) {
        best = std::move(via);
      }
    }
    if (best) return std::move(*best);
  }
  return out;
}

// Through a rest state c e_{k-1}: plan there, optionally cruise when |c| is
// at the bound, then plan to xf. c is found by scanning the terminal x_k.
std::optional<Plan> Context::via_search(const StateVector& x0,
                                        const StateVector& xf) {
  const int k = x0.order();
  const double bound = M_[k - 1].value();
  auto through = [&](double c, double cruise) {
    StateVector rest(k - 1);
    rest.x(k - 1) = c;
    Plan p = plan(x0.head(k - 1), rest);
    if (cruise > 0.0) {
      p.pieces.push_back({0.0, cruise, p.asl.size()});
      p.asl.elements.push_back(Behavior{k - 1, sign_of(c)});
      p.t_f += cruise;
    }
    append(p, plan(rest, xf.head(k - 1)));
    return p;
  };
  auto miss = [&](double c) { return run(x0, through(c, 0.0)).x(k) - xf.x(k); };

  std::optional<Plan> best;
  auto consider = [&](Plan p) {
    if (misses(x0, p, xf)) return;
    if (!best || p.t_f < best->t_f) best = std::move(p);
  };
  const int samples = std::max(2, options_.intercept_samples);
  double c_prev = -bound;
  double f_prev = miss(c_prev);
  for (double c : {-bound, bound}) {
    const double f = miss(c);
    const double cruise = -f / c;
    if (cruise > 0.0) consider(merge_repeats(through(c, cruise)));
  }
  for (int i = 1; i <= samples; ++i) {
    const double c = -bound + 2.0 * bound * i / samples;
    const double f = miss(c);
    if ((f_prev < 0.0) != (f < 0.0)) {
      const double root = f_prev < 0.0
          ? crossing(miss, c_prev, f_prev, c, f, options_.intercept_tolerance)
          : crossing([&](double v) { return -miss(v); }, c_prev, -f_prev, c, -f,
                     options_.intercept_tolerance);
      consider(merge_repeats(through(root, 0.0)));
    }
    c_prev = c;
    f_prev = f;
  }
  return best;
}

// Descent prefixes followed by any order-(k-1) law, with x_k closed by the
// solver instead of the manifold.
std::optional<Plan> Context::splice_search(const StateVector& x0,
                                           const Plan& descent, int cruise,
                                           const StateVector& xf) {
  const int k = x0.order();
  const BoundVector M = M_.head(k).with(k, Bound{});
  Asl head = descent.asl;
  head.elements.push_back(Behavior{cruise, Sign::kPositive});
  std::optional<Plan> best;
  for (std::size_t cut = 1; cut <= head.size(); ++cut) {
    for (const Asl& tail : enumerate_af(k - 1)) {
      for (Sign last : {Sign::kPositive, Sign::kNegative}) {
        Asl law;
        law.elements.assign(
            head.elements.begin(),
            head.elements.begin() + static_cast<std::ptrdiff_t>(cut));
        for (const AslElement& el : assign_signs(tail, last).elements) {
          law.elements.push_back(el);
        }
        std::optional<StageSystem> sys;
        try {
          sys = assemble(law, x0, xf, M);
        } catch (const InvariantError&) {
          continue;
        }
        for (const auto& t : solve_all(*sys, options_.solve)) {
          const Trajectory traj = realize(*sys, t);
          if (verify(traj, options_.feasibility_eps)) continue;
          if (best && traj.t_f >= best->t_f) continue;
          Plan p;
          p.asl = law;
          for (std::size_t i = 0; i < traj.segments.size(); ++i) {
            p.pieces.push_back({traj.segments[i].u, traj.segments[i].duration,
                                sys->real_stages()[i].element});
          }
          p.t_f = traj.t_f;
          best = std::move(p);
        }
      }
    }
  }
  if (best) best = merge_repeats(*best);
  return best;
}

Plan Context::marker_search(const StateVector& x0, const StateVector& xf) {
  const int k = x0.order();
  const BoundVector M = M_.head(k);
  std::vector<std::string> attempted;
  std::optional<Plan> best;
  std::string best_text;
  for (int d = 2; d <= 2 * ((k - 1) / 2); d += 2) {
    std::vector<Asl> laws = enumerate_af(d);
    std::stable_sort(laws.begin(), laws.end(), [](const Asl& a, const Asl& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return canonical(a) < canonical(b);
    });
    for (const Asl& base : laws) {
      for (Sign sigma : {Sign::kPositive, Sign::kNegative}) {
        Asl law = base;
        law.elements.push_back(TangentMarker{Behavior{k, Sign::kUnassigned}, d});
        law = assign_signs(law, sigma);
        attempted.push_back(asl_to_string(law));
        std::optional<StageSystem> sys;
        try {
          sys = assemble(law, x0, std::nullopt, M);
        } catch (const InvariantError&) {
          continue;
        }
        for (const auto& t : solve_all(*sys, options_.solve)) {
          const Trajectory prefix = realize(*sys, t);
          if (verify(prefix, options_.feasibility_eps)) continue;
          const StateVector touch = prefix.end_state();
          const Plan& rest = plan_free(touch, xf);
          if (breaks_bound(touch, rest, k)) continue;
          Plan candidate;
          candidate.asl = law;
          for (std::size_t i = 0; i < prefix.segments.size(); ++i) {
            candidate.pieces.push_back({prefix.segments[i].u,
                                        prefix.segments[i].duration,
                                        sys->real_stages()[i].element});
          }
          candidate.t_f = prefix.t_f;
          append(candidate, rest);
          const std::string text = asl_to_string(candidate.asl);
          const bool better =
              !best || candidate.t_f < best->t_f - 1e-9 ||
              (candidate.t_f <= best->t_f + 1e-9 && text < best_text);
          if (better) {
            best = std::move(candidate);
            best_text = text;
          }
        }
      }
    }
  }
  if (!best) {
    throw PlannerFailure("no tangent-marker law on x_" + std::to_string(k) +
                         " yields a feasible trajectory; attempted: " +
                         attempted_list(attempted));
  }
  return *best;
}

Trajectory to_trajectory(const Problem& problem, const Plan& p, bool flip) {
  Trajectory traj;
  traj.problem = problem;
  traj.asl = flip ? negated(p.asl) : p.asl;
  StateVector x = problem.x0;
  for (const Piece& piece : p.pieces) {
    const double u = flip && piece.u != 0.0 ? -piece.u : piece.u;
    traj.segments.push_back({u, piece.duration, x});
    x = propagate(x, u, piece.duration);
    traj.t_f += piece.duration;
  }
  return traj;
}

template <typename F>
Trajectory canonical_plan(const Problem& problem, const PlannerOptions& options,
                          const BoundVector& M, F&& body) {
  problem.check(options.feasibility_eps);
  const bool flip = first_nonzero_negative(problem.x0, problem.xf);
  const StateVector x0 = flip ? -problem.x0 : problem.x0;
  const StateVector xf = flip ? -problem.xf : problem.xf;
  Context ctx(M, options);
  return to_trajectory(problem, body(ctx, x0, xf), flip);
}

}  // namespace

double proper_position(const StateVector& x0, const StateVector& xf,
                       const BoundVector& M, const PlannerOptions& options) {
  if (x0.order() < 2) throw Error("proper position requires order >= 2");
  Context ctx(M, options);
  return ctx.proper_position(x0, xf);
}

Classification classify(const StateVector& x0, const StateVector& xf,
                        const BoundVector& M, const PlannerOptions& options) {
  const int k = x0.order();
  Context ctx(M, options);
  const double p = ctx.proper_position(x0, xf);
  const double diff = x0.x(k) - p;
  Classification c{Classification::Kind::kProper, p};
  if (std::abs(diff) > options.eps_proper * ctx.scale(k, p)) {
    c.kind = diff > 0.0 ? Classification::Kind::kHigher
                        : Classification::Kind::kLower;
  }
  return c;
}

Trajectory plan(const Problem& problem, const PlannerOptions& options) {
  return canonical_plan(problem, options, problem.M,
                        [](Context& ctx, const StateVector& x0,
                           const StateVector& xf) { return ctx.plan(x0, xf); });
}

Trajectory plan_unconstrained(const Problem& problem,
                              const PlannerOptions& options) {
  Problem relaxed = problem;
  relaxed.M = problem.M.input_only();
  Trajectory t = canonical_plan(
      relaxed, options, relaxed.M,
      [](Context& ctx, const StateVector& x0, const StateVector& xf) {
        return ctx.unconstrained(x0, xf);
      });
  return t;
}

std::optional<double> intercept_time(const Trajectory& prefix,
                                     const StateVector& xf,
                                     const BoundVector& M,
                                     const PlannerOptions& options) {
  Context ctx(M, options);
  Plan p;
  for (std::size_t i = 0; i < prefix.segments.size(); ++i) {
    p.pieces.push_back({prefix.segments[i].u, prefix.segments[i].duration, i});
  }
  const auto hit = ctx.intercept(prefix.problem.x0, p, xf);
  if (!hit) return std::nullopt;
  double t = hit->second;
  for (std::size_t i = 0; i < hit->first; ++i) t += p.pieces[i].duration;
  return t;
}

Trajectory tangent_marker_search(const Problem& problem,
                                 const PlannerOptions& options) {
  return canonical_plan(problem, options, problem.M,
                        [](Context& ctx, const StateVector& x0,
                           const StateVector& xf) {
                          return ctx.marker_search(x0, xf);
                        });
}

}  // namespace mim
