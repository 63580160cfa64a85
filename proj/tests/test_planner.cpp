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

#include <gtest/gtest.h>

#include "mim/kinematics.hpp"
#include "mim/laws.hpp"
#include "mim/metrics.hpp"
#include "mim/oracle.hpp"
#include "mim/planner.hpp"
#include "mim/solver.hpp"
#include "mim/tools/sampling.hpp"

namespace mim {
namespace {

const BoundVector kJerk{1.0, 1.0, 1.5, 4.0};
const BoundVector kSnap{1.0, 1.0, 1.5, 4.0, 20.0};

void expect_reaches(const Trajectory& t, double tol = 1e-6) {
  EXPECT_FALSE(verify(t)) << verify(t)->describe();
  EXPECT_LE(terminal_error(t.end_state(), t.problem.xf, t.problem.M), tol);
}

TEST(PlanTest, FirstOrder) {
  const Problem p{1, StateVector{0.0}, StateVector{3.0}, BoundVector{2.0, 10.0}};
  const Trajectory t = plan(p);
  ASSERT_EQ(t.segments.size(), 1u);
  EXPECT_EQ(t.segments[0].u, 2.0);
  EXPECT_DOUBLE_EQ(t.t_f, 1.5);
}

TEST(PlanTest, RestToRest) {
  const Problem p{3, StateVector{0.2, -0.1, 1.0}, StateVector{0.2, -0.1, 1.0},
                  kJerk};
  const Trajectory t = plan(p);
  EXPECT_EQ(t.t_f, 0.0);
  EXPECT_TRUE(t.segments.empty());
}

TEST(PlanTest, JerkLimitedReference) {
  const Problem p{3, StateVector{1.0, -0.375, 4.0}, StateVector{0.0, 0.0, 0.0},
                  kJerk};
  const Trajectory t = plan(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 -1 +0 -2 +0 +1 -0");
  expect_reaches(t);
  EXPECT_NEAR(t.t_f, oracle::exhaustive_tf(p).upper, 1e-6);
}

TEST(PlanTest, JerkLimitedTangentMarker) {
  const Problem p{3, StateVector{1.0, -0.375, 3.999},
                  StateVector{0.0, 0.0, 4.0}, kJerk};
  const Trajectory t = plan(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 +0 (+3,2) +0 -0 +0");
  expect_reaches(t);
  EXPECT_NEAR(t.t_f, oracle::exhaustive_tf(p).upper, 1e-6);
}

TEST(PlanTest, SnapLimitedVirtualBehavior) {
  const Problem p{4, StateVector{0.75, -0.375, 2.0, 9.0},
                  StateVector{0.25, 0.5, -2.0, -5.0}, kSnap};
  const Trajectory t = plan(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 -1 +0 -2 +0 +1 -0 ( -3 ) +0 +1 -0 +0");
  EXPECT_NEAR(t.t_f, 9.8604, 5e-3);
  expect_reaches(t);
}

TEST(PlanTest, SnapLimitedTangentMarker) {
  const Problem p{4, StateVector{1.0, -0.375, 4.0, -10.0},
                  StateVector{0.75, -0.375, 2.0, 16.0}, kSnap};
  const Trajectory t = plan(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 +0 (+3,2) +0 -0 +0 +3 -0 -1 +0 -0");
  expect_reaches(t);
}

TEST(PlanTest, RejectsOutOfBoundStart) {
  const Problem p{2, StateVector{1.5, 0.0}, StateVector{0.0, 0.0},
                  BoundVector{1.0, 1.0, std::nullopt}};
  EXPECT_THROW(plan(p), InfeasibleProblem);
}

// The order-2 optimum jumps when x_1 reaches M_1, so the proper position is
// discontinuous along this descent.
TEST(PlanTest, ProperPositionJumpOrder3) {
  const Problem p{3,
                  StateVector{-0.21889030557199352, -0.38577647918003688,
                              2.6581950100254392},
                  StateVector{0.52985455576418317, 0.47618062302510644,
                              3.06714377741703},
                  kJerk};
  const Trajectory t = plan(p);
  expect_reaches(t);
  EXPECT_NEAR(t.t_f, oracle::exhaustive_tf(p).upper, 1e-6);
}

// Here the order-3 optimum itself jumps as x_1 crosses zero.
TEST(PlanTest, ProperPositionJumpOrder4) {
  const Problem p{4,
                  StateVector{0.27644962291368058, -0.68521406183259514,
                              -2.5645839377184814, 15.969928618012339},
                  StateVector{0.59467577862861254, -0.27453842364525771,
                              -3.1930890581575504, 6.9856505568176175},
                  kSnap};
  const Trajectory t = plan(p);
  expect_reaches(t);
  EXPECT_GE(t.t_f, plan_unconstrained(p).t_f);
}

TEST(PlanTest, MatchesExhaustiveSearchOnRandomThirdOrder) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 12; ++i) {
    const Problem p = tools::random_feasible_problem(3, kJerk, rng);
    const Trajectory t = plan(p);
    expect_reaches(t);
    EXPECT_LE(t.t_f, oracle::exhaustive_tf(p).upper + 1e-6) << i;
  }
}

TEST(PlanTest, LawsAreValidAndBangSingularBang) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 15; ++i) {
      const Problem p = tools::random_feasible_problem(n, kSnap.head(n), rng);
      const Trajectory t = plan(p);
      expect_reaches(t);
      EXPECT_EQ(em_mse(t), 0.0);
      EXPECT_TRUE(validate(t.asl, n).empty()) << asl_to_string(t.asl);
    }
  }
}

TEST(PlanTest, MirrorSymmetry) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 3;
    const Problem p = tools::random_feasible_problem(n, kSnap.head(n), rng);
    const Trajectory a = plan(p);
    const Trajectory b = plan(p.mirrored());
    ASSERT_EQ(a.segments.size(), b.segments.size());
    for (std::size_t j = 0; j < a.segments.size(); ++j) {
      EXPECT_EQ(a.segments[j].duration, b.segments[j].duration);
      EXPECT_EQ(a.segments[j].u, -b.segments[j].u);
    }
    EXPECT_EQ(asl_to_string(negated(a.asl)), asl_to_string(b.asl));
  }
}

TEST(PlanTest, DeterministicAcrossCalls) {
  const Problem p{4, StateVector{0.75, -0.375, 2.0, 9.0},
                  StateVector{0.25, 0.5, -2.0, -5.0}, kSnap};
  const Trajectory a = plan(p);
  const Trajectory b = plan(p);
  ASSERT_EQ(a.segments.size(), b.segments.size());
  for (std::size_t j = 0; j < a.segments.size(); ++j) {
    EXPECT_EQ(a.segments[j].duration, b.segments[j].duration);
  }
}

TEST(ProperPositionTest, BrakingFromUnitVelocity) {
  const BoundVector M{1.0, 1.0, std::nullopt};
  EXPECT_DOUBLE_EQ(proper_position(StateVector{1.0, 7.0}, StateVector{0.0, 0.0}, M),
                   -0.5);
}

TEST(ProperPositionTest, MatchingLowerStates) {
  EXPECT_DOUBLE_EQ(proper_position(StateVector{0.3, -0.2, 5.0},
                                   StateVector{0.3, -0.2, 1.25}, kJerk),
                   1.25);
}

TEST(ProperPositionTest, LiftedSubPlanLandsOnTarget) {
  const StateVector xf{0.0, 0.0, 0.0};
  StateVector x{0.4, -0.6, 0.0};
  x.x(3) = proper_position(x, xf, kJerk);
  const Trajectory sub = plan(Problem{2, x.head(2), xf.head(2), kJerk.head(2)});
  StateVector y = x;
  for (const Segment& s : sub.segments) y = propagate(y, s.u, s.duration);
  EXPECT_NEAR(y.x(3), 0.0, 1e-12);
}

TEST(ClassifyTest, ProperHigherLower) {
  const StateVector xf{0.0, 0.0, 0.0};
  StateVector x{0.4, -0.6, 0.0};
  const double p = proper_position(x, xf, kJerk);
  x.x(3) = p;
  EXPECT_EQ(classify(x, xf, kJerk).kind, Classification::Kind::kProper);
  x.x(3) = p + 0.5;
  EXPECT_EQ(classify(x, xf, kJerk).kind, Classification::Kind::kHigher);
  x.x(3) = p - 0.5;
  EXPECT_EQ(classify(x, xf, kJerk).kind, Classification::Kind::kLower);
  EXPECT_DOUBLE_EQ(classify(x, xf, kJerk).proper_position, p);
}

TEST(ClassifyTest, ProperStartPlansLikeSubProblem) {
  const StateVector xf{0.0, 0.0, 0.0};
  StateVector x{0.4, -0.6, 0.0};
  x.x(3) = proper_position(x, xf, kJerk);
  const Trajectory full = plan(Problem{3, x, xf, kJerk});
  const Trajectory sub = plan(Problem{2, x.head(2), xf.head(2), kJerk.head(2)});
  EXPECT_NEAR(full.t_f, sub.t_f, 1e-9);
}

TEST(PlanUnconstrainedTest, SymmetricBangBang) {
  const Problem p{2, StateVector{0.0, 0.5}, StateVector{0.0, 0.0},
                  BoundVector{1.0, 0.1, 0.1}};
  const Trajectory t = plan_unconstrained(p);
  ASSERT_EQ(t.segments.size(), 2u);
  EXPECT_NEAR(t.segments[0].duration, std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(t.t_f, std::sqrt(2.0), 1e-10);
}

TEST(PlanUnconstrainedTest, RestToRest) {
  const Problem p{3, StateVector{0.0, 1.0, 2.0}, StateVector{0.0, 1.0, 2.0},
                  kJerk};
  EXPECT_EQ(plan_unconstrained(p).t_f, 0.0);
}

TEST(PlanUnconstrainedTest, FirstOrder) {
  const Problem p{1, StateVector{1.0}, StateVector{-2.0}, BoundVector{3.0, 5.0}};
  const Trajectory t = plan_unconstrained(p);
  EXPECT_DOUBLE_EQ(t.t_f, 1.0);
  EXPECT_EQ(t.segments[0].u, -3.0);
}

TEST(PlanUnconstrainedTest, SpeedsUpTowardTarget) {
  const Problem p{2, StateVector{-3.0, 0.0}, StateVector{-3.0, -4.0},
                  BoundVector{1.0, std::nullopt, std::nullopt}};
  const Trajectory t = plan_unconstrained(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 +0");
  EXPECT_NEAR(t.t_f, 2.0 * (std::sqrt(13.0) - 3.0), 1e-12);
  expect_reaches(t, 1e-12);
}

TEST(PlanUnconstrainedTest, SecondOrderMatchesClosedForm) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> input(0.5, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double M0 = input(rng);
    const Problem p = tools::random_feasible_problem(
        2, BoundVector{M0, std::nullopt, std::nullopt}, rng);
    const Trajectory t = plan(p);
    EXPECT_NEAR(t.t_f, oracle::double_integrator_tf(p.x0, p.xf, M0, {}), 1e-9);
    expect_reaches(t, 1e-9);
  }
}

TEST(PlanUnconstrainedTest, LowerBoundsConstrainedTime) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Problem p = tools::random_feasible_problem(3, kJerk, rng);
    EXPECT_LE(plan_unconstrained(p).t_f, plan(p).t_f + 1e-9);
  }
}

Trajectory descent(const StateVector& x0, double u, double duration,
                   const BoundVector& M) {
  Trajectory t;
  t.problem = Problem{x0.order(), x0, x0, M};
  t.segments.push_back({u, duration, x0});
  t.t_f = duration;
  return t;
}

TEST(InterceptTimeTest, DoubleIntegratorManifold) {
  const BoundVector M{1.0, 1.0, std::nullopt};
  const auto t2 = intercept_time(descent(StateVector{0.0, 0.5}, -1.0, 1.0, M),
                                 StateVector{0.0, 0.0}, M);
  ASSERT_TRUE(t2);
  EXPECT_NEAR(*t2, std::sqrt(0.5), 1e-10);
}

TEST(InterceptTimeTest, ProperStart) {
  const BoundVector M{1.0, 1.0, std::nullopt};
  const auto t2 = intercept_time(descent(StateVector{1.0, -0.5}, -1.0, 1.0, M),
                                 StateVector{0.0, 0.0}, M);
  ASSERT_TRUE(t2);
  EXPECT_EQ(*t2, 0.0);
}

TEST(InterceptTimeTest, CruiseReachedFirst) {
  const BoundVector M{1.0, 1.0, std::nullopt};
  EXPECT_FALSE(intercept_time(descent(StateVector{0.0, 2.0}, -1.0, 1.0, M),
                              StateVector{0.0, 0.0}, M));
}

TEST(TangentMarkerSearchTest, TouchesPositionBound) {
  const Problem p{3, StateVector{1.0, -0.375, 3.999},
                  StateVector{0.0, 0.0, 4.0}, kJerk};
  const Trajectory t = tangent_marker_search(p);
  EXPECT_EQ(asl_to_string(t.asl), "-0 +0 (+3,2) +0 -0 +0");
  expect_reaches(t);
}

TEST(TangentMarkerSearchTest, NotEnteredWhenPositionBoundInactive) {
  const Problem p{3, StateVector{1.0, -0.375, 4.0}, StateVector{0.0, 0.0, 0.0},
                  kJerk};
  for (const AslElement& e : plan(p).asl.elements) {
    EXPECT_FALSE(std::holds_alternative<TangentMarker>(e));
  }
}

TEST(TangentMarkerSearchTest, NoCandidateThrows) {
  const Problem p{2, StateVector{0.0, 0.0}, StateVector{0.0, 1.0},
                  BoundVector{1.0, 1.0, 2.0}};
  EXPECT_THROW(tangent_marker_search(p), PlannerFailure);
}

}  // namespace
}  // namespace mim
