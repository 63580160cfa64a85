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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mim/kinematics.hpp"

namespace mim {
namespace {

// Independent reference: integrate the chain numerically with a fine
// midpoint rule on x' = (u, x_1, ..., x_{n-1}).
StateVector integrate(StateVector x, double u, double t, int steps = 20000) {
  const int n = x.order();
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    StateVector mid = x;
    mid.x(1) += 0.5 * h * u;
    for (int k = 2; k <= n; ++k) mid.x(k) += 0.5 * h * x.x(k - 1);
    StateVector next = x;
    next.x(1) += h * u;
    for (int k = 2; k <= n; ++k) next.x(k) += h * mid.x(k - 1);
    x = next;
  }
  return x;
}

TEST(PropagateTest, UnitInputFromRest) {
  const StateVector y = propagate(StateVector{0.0, 0.0, 0.0}, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(y.x(1), 1.0);
  EXPECT_DOUBLE_EQ(y.x(2), 0.5);
  EXPECT_DOUBLE_EQ(y.x(3), 1.0 / 6.0);
}

TEST(PropagateTest, ZeroTimeIsIdentity) {
  const StateVector x{0.3, -1.2, 4.0, 7.5};
  for (double u : {-1.0, 0.0, 2.0}) EXPECT_EQ(propagate(x, u, 0.0), x);
}

TEST(PropagateTest, Semigroup) {
  const StateVector x{0.3, -0.2};
  const StateVector a = propagate(propagate(x, -1.0, 0.2), -1.0, 0.3);
  const StateVector b = propagate(x, -1.0, 0.5);
  EXPECT_NEAR(a.x(1), b.x(1), 1e-15);
  EXPECT_NEAR(a.x(2), b.x(2), 1e-15);
}

TEST(PropagateTest, AgreesWithNumericIntegration) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    StateVector x(n);
    for (int k = 1; k <= n; ++k) x.x(k) = d(rng);
    const double u = d(rng);
    const double t = std::abs(d(rng));
    const StateVector exact = propagate(x, u, t);
    const StateVector ref = integrate(x, u, t);
    for (int k = 1; k <= n; ++k) {
      EXPECT_NEAR(exact.x(k), ref.x(k), 1e-7) << "n=" << n << " k=" << k;
    }
  }
}

TEST(StatePolynomialTest, RestToMotion) {
  EXPECT_EQ(state_polynomial(StateVector{0.0, 0.0}, 1.0, 2),
            Polynomial({0.0, 0.0, 0.5}));
}

TEST(StatePolynomialTest, ConstantVelocity) {
  const Polynomial p = state_polynomial(StateVector{1.0, 0.0}, 0.0, 2);
  EXPECT_DOUBLE_EQ(p(0.0), 0.0);
  EXPECT_DOUBLE_EQ(p(2.5), 2.5);
  EXPECT_LE(p.degree(), 2);
  EXPECT_DOUBLE_EQ(p.coefficient(1), 1.0);
}

TEST(StatePolynomialTest, CubicCoefficients) {
  const Polynomial p = state_polynomial(StateVector{1.0, 2.0, 3.0}, -1.0, 3);
  ASSERT_EQ(p.degree(), 3);
  EXPECT_DOUBLE_EQ(p.coefficient(0), 3.0);
  EXPECT_DOUBLE_EQ(p.coefficient(1), 2.0);
  EXPECT_DOUBLE_EQ(p.coefficient(2), 0.5);
  EXPECT_DOUBLE_EQ(p.coefficient(3), -1.0 / 6.0);
}

TEST(StatePolynomialTest, MatchesPropagate) {
  const StateVector x{0.4, -0.1, 2.0, -3.0};
  for (int k = 1; k <= 4; ++k) {
    const Polynomial p = state_polynomial(x, 0.7, k);
    EXPECT_NEAR(p(1.3), propagate(x, 0.7, 1.3).x(k), 1e-14);
  }
}

TEST(RealRootsTest, SimpleRoot) {
  const auto r = real_roots(Polynomial({-1.0, 0.0, 1.0}), 0.0, 2.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(RealRootsTest, ThreeRoots) {
  const auto r = real_roots(Polynomial({0.0, -1.0, 0.0, 1.0}), -2.0, 2.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -1.0, 1e-12);
  EXPECT_NEAR(r[1], 0.0, 1e-12);
  EXPECT_NEAR(r[2], 1.0, 1e-12);
}

TEST(RealRootsTest, DoubleRootReportedOnce) {
  const auto r = real_roots(Polynomial({0.09, -0.6, 1.0}), 0.0, 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 0.3, 1e-10);
}

TEST(RealRootsTest, ZeroPolynomialThrows) {
  EXPECT_THROW(real_roots(Polynomial(), 0.0, 1.0), Error);
}

TEST(SegmentBoundCheckTest, ParabolaPeakInside) {
  const BoundVector M{1.0, 1.0, 0.6};
  EXPECT_FALSE(segment_bound_check(StateVector{1.0, 0.0}, -1.0, 2.0, M));
}

TEST(SegmentBoundCheckTest, ParabolaPeakBreaksBound) {
  const BoundVector M{1.0, 1.0, 0.4};
  const auto v = segment_bound_check(StateVector{1.0, 0.0}, -1.0, 2.0, M);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->k, 2);
  EXPECT_NEAR(v->t, 1.0, 1e-12);
  EXPECT_NEAR(v->value, 0.5, 1e-12);
}

TEST(SegmentBoundCheckTest, ZeroDurationChecksStart) {
  const BoundVector M{1.0, 1.0, 1.0};
  EXPECT_FALSE(segment_bound_check(StateVector{1.0, -1.0}, 1.0, 0.0, M));
  EXPECT_TRUE(segment_bound_check(StateVector{1.0, -1.5}, 1.0, 0.0, M));
}

TEST(SegmentBoundCheckTest, UnboundedComponentsIgnored) {
  const BoundVector M{1.0, std::nullopt, std::nullopt};
  EXPECT_FALSE(segment_bound_check(StateVector{50.0, 1e6}, 1.0, 10.0, M));
}

}  // namespace
}  // namespace mim
