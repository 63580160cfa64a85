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

#include <gtest/gtest.h>

#include "mim/kinematics.hpp"
#include "mim/laws.hpp"
#include "mim/solver.hpp"

namespace mim {
namespace {

const BoundVector kVelocityBound{1.0, 1.0, std::nullopt};

TEST(StageControlsTest, MixedRideLaw) {
  EXPECT_EQ(stage_controls(asl_parse("-0 -1 +0"), 1.0),
            (std::vector<double>{-1.0, 0.0, 1.0}));
}

TEST(StageControlsTest, ScalesWithInputBound) {
  EXPECT_EQ(stage_controls(asl_parse("+0 -0"), 2.0),
            (std::vector<double>{2.0, -2.0}));
}

TEST(StageControlsTest, GroupMembersRideAtZero) {
  EXPECT_EQ(stage_controls(asl_parse_unchecked("-0 ( -3 ) +0"), 1.5),
            (std::vector<double>{-1.5, 0.0, 1.5}));
}

TEST(AssembleTest, FullFormulationCounts) {
  const StageSystem sys = assemble(asl_parse("-0 -1 +0"), StateVector{0.0, 2.0},
                                   StateVector{0.0, 0.0}, kVelocityBound);
  EXPECT_EQ(sys.full_unknowns(), 7u);
  EXPECT_EQ(sys.full_equations(), 7u);
  EXPECT_EQ(sys.unknowns(), 3u);
  EXPECT_EQ(sys.equations(), 3u);
}

TEST(AssembleTest, SquareForEveryEnumeratedLaw) {
  const BoundVector M{1.0, 1.0, 1.5, 4.0, 20.0};
  for (int n = 1; n <= 4; ++n) {
    const StateVector zero(n);
    for (const Asl& law : enumerate_af(n)) {
      const StageSystem sys =
          assemble(assign_signs(law, Sign::kPositive), zero, zero, M.head(n));
      EXPECT_EQ(sys.unknowns(), sys.equations()) << canonical(law);
    }
  }
}

TEST(AssembleTest, FirstOrderClosedForm) {
  const StageSystem sys = assemble(asl_parse("+0"), StateVector{0.0},
                                   StateVector{3.0}, BoundVector{2.0, 5.0});
  const auto t = solve_times(sys);
  ASSERT_TRUE(t);
  EXPECT_NEAR((*t)[0], 1.5, 1e-12);
}

TEST(AssembleTest, MarkerConditions) {
  const BoundVector M{1.0, 1.0, 1.5, 4.0};
  const StageSystem sys = assemble(asl_parse("+0 -0 (-3,2) -0 +0 -0"),
                                   StateVector{0.0, 0.0, 0.0},
                                   StateVector{0.0, 0.5, -3.0}, M);
  int x3 = 0, x2 = 0;
  for (const StageSystem::Op& op : sys.program()) {
    if (op.kind != StageSystem::Op::Kind::kCondition) continue;
    if (op.k == 3 && op.value == -4.0) ++x3;
    if (op.k == 2 && op.value == 0.0) ++x2;
  }
  EXPECT_EQ(x3, 1);
  EXPECT_EQ(x2, 1);
  // The two "-0" stages around the marker share one control value.
  const auto u = stage_controls(sys.asl(), 1.0);
  EXPECT_EQ(u, (std::vector<double>{1.0, -1.0, -1.0, 1.0, -1.0}));
}

TEST(AssembleTest, RejectsUnsignedAndUnboundedRides) {
  EXPECT_THROW(assemble(parse_canonical("010"), StateVector{0.0, 0.0},
                        StateVector{0.0, 0.0}, kVelocityBound),
               InvariantError);
  EXPECT_THROW(assemble(asl_parse("-0 -1 +0"), StateVector{0.0, 0.0},
                        StateVector{0.0, 0.0}, BoundVector{1.0, std::nullopt,
                                                           std::nullopt}),
               InvariantError);
  EXPECT_THROW(assemble(asl_parse("-0 +0"), StateVector{0.0, 0.0}, std::nullopt,
                        kVelocityBound),
               InvariantError);
}

TEST(SolveTimesTest, CruiseAtVelocityBound) {
  const StageSystem sys = assemble(asl_parse("-0 -1 +0"), StateVector{0.0, 2.0},
                                   StateVector{0.0, 0.0}, kVelocityBound);
  const auto t = solve_times(sys);
  ASSERT_TRUE(t);
  ASSERT_EQ(t->size(), 3u);
  for (double v : *t) EXPECT_NEAR(v, 1.0, 1e-10);
}

TEST(SolveTimesTest, RestToRestIsZero) {
  const StageSystem sys = assemble(asl_parse("-0 +0"), StateVector{0.0, 0.0},
                                   StateVector{0.0, 0.0}, kVelocityBound);
  const auto t = solve_times(sys);
  ASSERT_TRUE(t);
  // The residual is quadratic in t, so durations only reach its square root.
  EXPECT_NEAR((*t)[0], 0.0, 1e-4);
  EXPECT_NEAR((*t)[1], 0.0, 1e-4);
}

TEST(SolveTimesTest, SymmetricBangBang) {
  const StageSystem sys = assemble(asl_parse("-0 +0"), StateVector{0.0, 0.5},
                                   StateVector{0.0, 0.0}, kVelocityBound);
  const auto t = solve_times(sys);
  ASSERT_TRUE(t);
  EXPECT_NEAR((*t)[0], std::sqrt(0.5), 1e-10);
  EXPECT_NEAR((*t)[1], std::sqrt(0.5), 1e-10);
}

TEST(SolveTimesTest, DeterministicForFixedSeed) {
  const BoundVector M{1.0, 1.0, 1.5, 4.0};
  const StageSystem sys =
      assemble(asl_parse("-0 -1 +0 -2 +0 +1 -0"), StateVector{1.0, -0.375, 4.0},
               StateVector{0.0, 0.0, 0.0}, M);
  SolveOptions o;
  o.seed = 11;
  EXPECT_EQ(solve_all(sys, o), solve_all(sys, o));
}

TEST(RealizeTest, VirtualBranchIsNotTraversed) {
  const BoundVector M{1.0, 1.0, 1.5, 4.0, 20.0};
  const Asl law = asl_parse("-0 -1 +0 -2 +0 +1 -0 ( -3 ) +0 +1 -0 +0");
  const StageSystem sys =
      assemble(law, StateVector{0.75, -0.375, 2.0, 9.0},
               StateVector{0.25, 0.5, -2.0, -5.0}, M);
  bool found = false;
  for (const auto& t : solve_all(sys)) {
    const Trajectory traj = realize(sys, t);
    if (verify(traj)) continue;
    found = true;
    EXPECT_EQ(traj.segments.size(), 11u);
    EXPECT_NEAR(traj.t_f, 9.8604, 5e-3);
  }
  EXPECT_TRUE(found);
}

TEST(RealizeTest, SingleStage) {
  const StageSystem sys = assemble(asl_parse("+0"), StateVector{0.0},
                                   StateVector{1.0}, BoundVector{1.0, 2.0});
  const Trajectory t = realize(sys, {1.0});
  ASSERT_EQ(t.segments.size(), 1u);
  EXPECT_DOUBLE_EQ(t.t_f, 1.0);
}

TEST(RealizeTest, KeepsZeroDurationStages) {
  const StageSystem sys = assemble(asl_parse("-0 +0"), StateVector{0.0, 0.0},
                                   StateVector{0.0, 0.0}, kVelocityBound);
  const Trajectory t = realize(sys, {0.0, 0.0});
  EXPECT_EQ(t.segments.size(), 2u);
  EXPECT_EQ(t.t_f, 0.0);
}

Trajectory hand_built(const Problem& p, std::vector<std::pair<double, double>> s) {
  Trajectory t;
  t.problem = p;
  StateVector x = p.x0;
  for (auto [u, d] : s) {
    t.segments.push_back({u, d, x});
    x = propagate(x, u, std::max(0.0, d));
    t.t_f += d;
  }
  return t;
}

TEST(VerifyTest, JerkLimitedReferenceSolution) {
  const Problem p{3, StateVector{1.0, -0.375, 4.0}, StateVector{0.0, 0.0, 0.0},
                  BoundVector{1.0, 1.0, 1.5, 4.0}};
  const StageSystem sys = assemble(asl_parse("-0 -1 +0 -2 +0 +1 -0"), p.x0,
                                   p.xf, p.M);
  const auto t = solve_times(sys);
  ASSERT_TRUE(t);
  EXPECT_FALSE(verify(realize(sys, *t)));
}

TEST(VerifyTest, OvershootingVelocity) {
  const Problem p{2, StateVector{0.0, 0.0}, StateVector{0.0, 0.0},
                  BoundVector{1.0, 1.0, 0.25}};
  const auto v = verify(hand_built(p, {{1.0, 1.0}, {-1.0, 2.0}, {1.0, 1.0}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Infeasibility::Kind::kBound);
  EXPECT_EQ(v->k, 2);
}

TEST(VerifyTest, TinyNegativeDurationTolerated) {
  const Problem p{1, StateVector{0.0}, StateVector{1.0}, BoundVector{1.0, 2.0}};
  EXPECT_FALSE(verify(hand_built(p, {{1.0, 1.0}, {-1.0, -1e-15}})));
  const auto v = verify(hand_built(p, {{1.0, 1.0}, {-1.0, -1e-3}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Infeasibility::Kind::kNegativeDuration);
}

TEST(VerifyTest, TerminalMiss) {
  const Problem p{1, StateVector{0.0}, StateVector{1.0}, BoundVector{1.0, 2.0}};
  const auto v = verify(hand_built(p, {{1.0, 0.5}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Infeasibility::Kind::kTerminal);
}

TEST(VerifyTest, Discontinuity) {
  const Problem p{1, StateVector{0.0}, StateVector{1.0}, BoundVector{1.0, 2.0}};
  Trajectory t = hand_built(p, {{1.0, 0.5}, {1.0, 0.5}});
  t.segments[1].start = StateVector{0.7};
  const auto v = verify(t);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, Infeasibility::Kind::kContinuity);
}

TEST(StateScaleTest, BoundedAndUnbounded) {
  const BoundVector M{1.0, 0.5, std::nullopt, 4.0};
  EXPECT_EQ(state_scale(M, 1, 100.0), 1.0);
  EXPECT_EQ(state_scale(M, 3, 0.0), 4.0);
  EXPECT_EQ(state_scale(M, 2, -7.0), 7.0);
  EXPECT_EQ(state_scale(M, 2, 0.1), 1.0);
}

}  // namespace
}  // namespace mim
