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

// Exact propagation of a chain of integrators under constant control.

#ifndef MIM_KINEMATICS_HPP_
#define MIM_KINEMATICS_HPP_

#include <optional>
#include <vector>

#include "mim/model.hpp"

namespace mim {

// Real univariate polynomial, coefficients stored lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double coefficient(int i) const;

  double operator()(double t) const;
  Polynomial derivative() const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<double> coefficients_;
};

// State after holding control u for t >= 0 seconds:
//   y_k = u t^k / k! + sum_{i=0}^{k-1} x_{k-i} t^i / i!.
StateVector propagate(const StateVector& x, double u, double t);

// x_k(t) as a polynomial of degree k.
Polynomial state_polynomial(const StateVector& x, double u, int k);

// All real roots of p inside [a, b], ascending, polished to ~1e-12 and
// deduplicated within 1e-10. Throws Error for the zero polynomial.
std::vector<double> real_roots(const Polynomial& p, double a, double b);

struct BoundViolation {
  int k = 0;         // violated state index
  double t = 0.0;    // time into the segment
  double value = 0.0;
};

// Checks |x_k(t)| <= M_k + eps on [0, T] for every bounded k. The extrema of
// a polynomial lie at the endpoints or at its stationary points, so only
// those are evaluated. Returns the first violation (lowest k, then earliest
// t).
std::optional<BoundViolation> segment_bound_check(const StateVector& x,
                                                  double u, double T,
                                                  const BoundVector& M,
                                                  double eps = 1e-9);

}  // namespace mim

#endif  // MIM_KINEMATICS_HPP_
