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

#include "mim/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace mim {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
}

double Polynomial::coefficient(int i) const {
  return i >= 0 && i <= degree() ? coefficients_[static_cast<std::size_t>(i)]
                                 : 0.0;
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (int i = 1; i <= degree(); ++i) {
    d.push_back(coefficients_[static_cast<std::size_t>(i)] * i);
  }
  return Polynomial(std::move(d));
}

StateVector propagate(const StateVector& x, double u, double t) {
  const int n = x.order();
  StateVector y(n);
  if (t == 0.0) return x;
  // powers[i] = t^i / i!
  std::vector<double> powers(static_cast<std::size_t>(n) + 1);
  powers[0] = 1.0;
  for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * t / i;
  for (int k = 1; k <= n; ++k) {
    double v = u * powers[k];
    for (int i = k - 1; i >= 0; --i) v += x.x(k - i) * powers[i];
    y.x(k) = v;
  }
  return y;
}

Polynomial state_polynomial(const StateVector& x, double u, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  double factorial = 1.0;
  for (int i = 0; i < k; ++i) {
    if (i > 0) factorial *= i;
    c[i] = x.x(k - i) / factorial;
  }
  factorial *= k;
  c[k] = u / factorial;
  return Polynomial(std::move(c));
}

namespace {

// Magnitude scale of p near t, used for "is this value zero" tests.
double magnitude(const Polynomial& p, double t) {
  double acc = 0.0;
  const double at = std::abs(t);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * at + std::abs(p.coefficient(i));
  }
  return std::max(acc, 1e-300);
}

// Root of p in [lo, hi] where p(lo) and p(hi) have opposite signs and p is
// monotone. Safeguarded Newton with bisection fallback.
double polish(const Polynomial& p, const Polynomial& dp, double lo, double hi) {
  double flo = p(lo);
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = p(t);
    if (f == 0.0) return t;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = t;
      flo = f;
    } else {
      hi = t;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(t))) break;
    const double d = dp(t);
    double next = d != 0.0 ? t - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

void roots_rec(const Polynomial& p, double a, double b,
               std::vector<double>& out) {
  if (p.degree() <= 0) return;
  if (p.degree() == 1) {
    const double r = -p.coefficient(0) / p.coefficient(1);
    if (r >= a && r <= b) out.push_back(r);
    return;
  }
  // Split [a, b] at the stationary points; p is monotone on each piece.
  const Polynomial dp = p.derivative();
  std::vector<double> knots{a};
  std::vector<double> critical;
  roots_rec(dp, a, b, critical);
  for (double c : critical) {
    if (c > a && c < b) knots.push_back(c);
  }
  knots.push_back(b);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const double t = knots[i];
    const double v = p(t);
    if (std::abs(v) <= 1e-12 * magnitude(p, t)) out.push_back(t);
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    const double flo = p(lo);
    const double fhi = p(hi);
    if (std::abs(flo) <= 1e-12 * magnitude(p, lo) ||
        std::abs(fhi) <= 1e-12 * magnitude(p, hi)) {
      continue;
    }
    if ((flo < 0.0) != (fhi < 0.0)) out.push_back(polish(p, dp, lo, hi));
  }
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double a, double b) {
  if (p.is_zero()) throw Error("polynomial is identically zero on interval");
  std::vector<double> roots;
  roots_rec(p, a, b, roots);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 1e-10) unique.push_back(r);
  }
  return unique;
}

std::optional<BoundViolation> segment_bound_check(const StateVector& x,
                                                  double u, double T,
                                                  const BoundVector& M,
                                                  double eps) {
  const int n = x.order();
  T = std::max(T, 0.0);
  for (int k = 1; k <= n && k <= M.order(); ++k) {
    if (!M.bounded(k)) continue;
    const double limit = M[k].value() + eps;
    std::vector<double> times{0.0};
    if (T > 0.0) {
      // x_k' = x_{k-1}; for k = 1 the derivative is the constant u.
      if (k >= 2) {
        const Polynomial velocity = state_polynomial(x, u, k - 1);
        if (!velocity.is_zero()) {
          for (double t : real_roots(velocity, 0.0, T)) times.push_back(t);
        }
      }
      times.push_back(T);
    }
    std::sort(times.begin(), times.end());
    const Polynomial xk = state_polynomial(x, u, k);
    for (double t : times) {
      const double v = xk(t);
      if (std::abs(v) > limit) return BoundViolation{k, t, v};
    }
  }
  return std::nullopt;
}

}  // namespace mim
