// Copyright 2026 The shadowkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <variant>

#include "shadowkit/construct.hpp"
#include "shadowkit/errors.hpp"
#include "shadowkit/zoo.hpp"
#include "support/generators.hpp"

namespace shadowkit {
namespace {

using testing::Gen;

SystemMap rotation4() { return build_zoo("rotation:m=4,k=1"); }

void expect_replays(const RealizationResult& r, const std::vector<Point>& expected) {
  const std::size_t horizon = expected.size() - 1;
  auto replay = r.is_autonomous() ? orbit(r.map(), r.start, horizon)
                                  : orbit_nonaut(r.sequence(), r.start, horizon);
  EXPECT_EQ(replay, expected);
}

TEST(RealizeNonautonomous, TrueOrbitLeavesSystemUnchanged) {
  auto f = rotation4();
  auto F = NonautonomousSystem::constant(f);
  auto r = realize_nonautonomous(F, PseudoOrbit::eventually_periodic({}, {0, 1, 2, 3}, Rational(1, 10)));
  EXPECT_EQ(r.rho_bound, 0);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(r.sequence().at(i), f);
}

TEST(RealizeNonautonomous, SingleJumpChangesOnePoint) {
  auto f = rotation4();
  auto r = realize_nonautonomous(NonautonomousSystem::constant(f),
                                 PseudoOrbit::finite({0, 0}, Rational(3, 10)));
  EXPECT_EQ(r.sequence().at(0), f.with(0, 0));
  EXPECT_EQ(r.sequence().at(1), f);
  EXPECT_EQ(r.rho_bound, Rational(1, 4));
}

TEST(RealizeNonautonomous, RandomPseudoOrbitsReplay) {
  Gen gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto space = gen.space(6);
    NonautonomousSystem F({gen.map(space)}, {gen.map(space), gen.map(space)});
    const Rational delta = space->diameter() / 2 + Rational(1, 100);
    // Walk the time-indexed delta-graph.
    std::vector<Point> xs{gen.point(6)};
    for (std::size_t i = 0; i < 9; ++i) {
      std::vector<Point> next;
      for (Point y = 0; y < 6; ++y) {
        if (space->distance(F.at(i)(xs.back()), y) < delta) next.push_back(y);
      }
      xs.push_back(next[gen.below(next.size())]);
    }
    auto r = realize_nonautonomous(F, PseudoOrbit::finite(xs, delta));
    expect_replays(r, xs);
    EXPECT_LE(r.rho_bound, delta);
    EXPECT_EQ(r.rho_bound, rho_seq(F, r.sequence()));
  }
}

TEST(RealizeNonautonomous, RejectsNonPseudoOrbit) {
  auto F = NonautonomousSystem::constant(rotation4());
  EXPECT_THROW(realize_nonautonomous(F, PseudoOrbit::finite({0, 0}, Rational(1, 4))), PreconditionError);
}

TEST(CheckConsistency, Examples) {
  const std::vector<Point> injective{0, 1, 2, 3};
  EXPECT_FALSE(check_consistency(injective));
  EXPECT_FALSE(check_consistency(PseudoOrbit::eventually_periodic({}, {0, 1}, 1)));
  const std::vector<Point> clash{0, 1, 0, 2};
  EXPECT_EQ(check_consistency(clash), std::make_pair(std::size_t{0}, std::size_t{2}));
  // The wrap edge counts: (0,1,0) periodic means 0 -> 1 and 0 -> 0.
  EXPECT_TRUE(check_consistency(PseudoOrbit::eventually_periodic({}, {0, 1, 0}, 1)));
}

TEST(RealizeAutonomous, ConstantPseudoOrbitFixesPoint) {
  auto f = rotation4();
  auto r = realize_autonomous(f, PseudoOrbit::eventually_periodic({}, {0}, Rational(3, 10)));
  EXPECT_EQ(r.map(), f.with(0, 0));
  EXPECT_EQ(r.rho_bound, Rational(1, 4));
}

TEST(RealizeAutonomous, TrueOrbitGivesSameMap) {
  auto f = rotation4();
  auto r = realize_autonomous(f, PseudoOrbit::finite(orbit(f, 1, 6), Rational(1, 100)));
  EXPECT_EQ(r.map(), f);
  EXPECT_EQ(r.rho_bound, 0);
}

TEST(RealizeAutonomous, RejectsInconsistentSequence) {
  EXPECT_THROW(realize_autonomous(rotation4(), PseudoOrbit::finite({0, 0, 0, 1}, Rational(3, 10))),
               PreconditionError);
}

TEST(CompressLoops, SimpleInputUnchanged) {
  auto f = rotation4();
  const std::vector<Point> ys{0, 1, 2, 3};
  EXPECT_EQ(compress_loops(ys, f, Rational(1, 10)), ys);
}

TEST(CompressLoops, RemovesEarliestRepeat) {
  Gen gen(32);
  SystemMap f = gen.system(5, 5);
  const Rational gamma = f.space()->diameter() + 1;
  const std::vector<Point> ys{0, 1, 2, 1, 3};  // (p, a, b, a, c)
  EXPECT_EQ(compress_loops(ys, f, gamma), (std::vector<Point>{0, 1, 3}));
}

TEST(CompressLoops, RejectsBrokenCycleEdge) {
  auto f = rotation4();
  const std::vector<Point> ys{0, 2};
  EXPECT_THROW(compress_loops(ys, f, Rational(1, 10)), PreconditionError);
}

TEST(CompressLoops, CompressedCycleIsRealized) {
  Gen gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    SystemMap f = gen.system(4, 8);
    const Rational gamma = gen.delta(f);
    // A random gamma-walk that returns to its start closes a pseudo-cycle.
    auto walk = gen.pseudo_orbit(f, gamma, 16);
    DeltaGraph graph(f, gamma);
    std::size_t end = 0;
    for (std::size_t i = 1; i < walk.size(); ++i) {
      if (graph.has_edge(walk[i], walk[0])) end = i;
    }
    if (end == 0 && !graph.has_edge(walk[0], walk[0])) continue;
    std::vector<Point> ys(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(end + 1));
    auto cycle = compress_loops(ys, f, gamma);
    auto r = realize_autonomous(f, PseudoOrbit::eventually_periodic({}, cycle, gamma));
    EXPECT_LE(r.rho_bound, gamma);
    auto replay = orbit(r.map(), cycle[0], 2 * cycle.size());
    for (std::size_t i = 0; i < replay.size(); ++i) EXPECT_EQ(replay[i], cycle[i % cycle.size()]);
  }
}

TEST(PerturbToInjective, InjectiveInputUnchanged) {
  auto f = rotation4();
  auto xs = PseudoOrbit::finite({0, 1, 2, 3}, Rational(1, 10));
  auto out = perturb_to_injective(f, xs, Rational(1, 2), beta_ball_pool(*f.space(), Rational(1, 2)));
  ASSERT_TRUE(std::holds_alternative<InjectiveRepair>(out));
  EXPECT_EQ(std::get<InjectiveRepair>(out).points, xs.preperiod);
  EXPECT_EQ(std::get<InjectiveRepair>(out).max_displacement, 0);
}

TEST(PerturbToInjective, SubstitutesSparePointAndBoundsChain) {
  auto f = rotation4();
  // The repeated 0 moves to 1 (nearest unused in B_{3/10}(0)), which pushes
  // the later 1 on to 2.
  auto xs = PseudoOrbit::finite({0, 0, 1}, Rational(3, 10));
  const Rational beta(3, 10);
  auto out = perturb_to_injective(f, xs, beta, beta_ball_pool(*f.space(), beta));
  ASSERT_TRUE(std::holds_alternative<InjectiveRepair>(out));
  const auto& repair = std::get<InjectiveRepair>(out);
  EXPECT_EQ(repair.points, (std::vector<Point>{0, 1, 2}));
  EXPECT_LE(repair.max_displacement, beta);
  const auto& space = *f.space();
  for (std::size_t i = 0; i + 1 < repair.points.size(); ++i) {
    const Point x = xs.preperiod[i], y = repair.points[i];
    const Point x1 = xs.preperiod[i + 1], y1 = repair.points[i + 1];
    Rational chain = space.distance(f(y), f(x)) + space.distance(f(x), x1) + space.distance(x1, y1);
    EXPECT_EQ(repair.chain_bounds[i], chain);
    EXPECT_LE(space.distance(f(y), y1), chain);
  }
}

TEST(PerturbToInjective, IsolatedPointExhaustsPool) {
  auto f = SystemMap::identity(rotation4().space());
  const Rational beta(1, 5);  // below the spacing: every ball is a singleton
  auto out = perturb_to_injective(f, PseudoOrbit::finite({2, 2, 2}, Rational(1, 10)), beta,
                                  beta_ball_pool(*f.space(), beta));
  ASSERT_TRUE(std::holds_alternative<PoolExhausted>(out));
  EXPECT_EQ(std::get<PoolExhausted>(out).index, 1u);
  EXPECT_EQ(std::get<PoolExhausted>(out).point, 2u);
}

TEST(Telescoping, OrbitHasZeroDeviation) {
  auto f = rotation4();
  auto xs = orbit(f, 0, 8);
  EXPECT_FALSE(telescoping_bound_check(f, xs, 2, 5, Rational(1, 10), Rational(1, 100)));
}

TEST(Telescoping, GammaOnContractingMap) {
  // Contracting 6-point map on a line: x -> floor(x / 2).
  DistanceMatrix d(6, std::vector<Rational>(6));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) d[i][j] = Rational(std::abs(i - j), 5);
  }
  SystemMap f(make_space({"0", "1", "2", "3", "4", "5"}, d), {0, 0, 1, 1, 2, 2});
  const Rational eps(1, 2), delta_prime(2, 5);
  const std::size_t P = 3;
  const Rational gamma = telescoping_gamma(f, P, eps, delta_prime);
  const Rational bound = std::min(eps, delta_prime / 2);
  Gen gen(34);
  for (int trial = 0; trial < 50; ++trial) {
    auto xs = gen.pseudo_orbit(f, gamma, 8);
    EXPECT_FALSE(telescoping_bound_check(f, xs, 1, P, gamma, bound));
  }
}

TEST(Telescoping, OversizedGammaCanViolate) {
  auto f = rotation4();
  const std::vector<Point> xs{0, 0, 0, 0};
  // x_i stays at 0 while f^i(0) walks away: d(0, f^2(0)) = 1/2.
  EXPECT_EQ(telescoping_bound_check(f, xs, 0, 3, Rational(3, 10), Rational(3, 10)), std::size_t{2});
}

TEST(PerturbFiniteSupport, EmptySupportReturnsBase) {
  auto f = rotation4();
  EXPECT_EQ(perturb_finite_support({f, {}, {}, ContinuityClass::all(), Rational(1, 10)}), f);
}

TEST(PerturbFiniteSupport, AllClassRedefinesPointwise) {
  auto f = rotation4();
  auto g = perturb_finite_support({f, {2}, {2}, ContinuityClass::all(), Rational(3, 10)});
  EXPECT_EQ(g, f.with(2, 2));
  EXPECT_THROW(perturb_finite_support({f, {2}, {1}, ContinuityClass::all(), Rational(3, 10)}),
               PreconditionError);
}

TEST(PerturbFiniteSupport, LipschitzOnSixteenPointGrid) {
  auto f = build_zoo("affine:a=1/2,b=1/4,m=16");
  const auto cls = ContinuityClass::lipschitz(2);
  ASSERT_TRUE(cls.admits(f));
  const Rational eps(1, 5);
  for (Point x = 0; x < 16; x += 5) {
    for (Point y = 0; y < 16; ++y) {
      if (!(f.space()->distance(f(x), y) < eps)) continue;
      try {
        auto g = perturb_finite_support({f, {x}, {y}, cls, eps});
        EXPECT_EQ(g(x), y);
        EXPECT_TRUE(cls.admits(g));
        EXPECT_LT(rho(f, g), eps);
      } catch (const Infeasible&) {
        // Confirm by exhaustion that no admissible completion exists.
        const std::pair<Point, Point> pin{x, y};
        EXPECT_FALSE(find_completion(f, std::span(&pin, 1), eps, cls));
      }
    }
  }
}

TEST(PerturbFiniteSupport, LipschitzCanBeInfeasible) {
  // Swapping two neighbours keeps their distance, which no 1/2-Lipschitz map can do.
  auto f = SystemMap::identity(build_zoo("tent:m=4").space());
  EXPECT_THROW(perturb_finite_support({f, {0, 1}, {1, 0}, ContinuityClass::lipschitz(Rational(1, 2)),
                                       Rational(1, 2)}),
               Infeasible);
}

TEST(WeakPerturb, FixedPointAndAllClass) {
  auto f = rotation4();
  EXPECT_EQ(weak_perturb(f, 1, f(1), ContinuityClass::all(), Rational(1, 10)), f);
  auto g = weak_perturb(f, 1, 1, ContinuityClass::all(), Rational(3, 10));
  EXPECT_EQ(rho(f, g), Rational(1, 4));
}

TEST(ClassPerturbationDelta, AllClassIsEpsilonAndCacheAgrees) {
  auto f = build_zoo("tent:m=6");
  EXPECT_EQ(class_perturbation_delta(f, ContinuityClass::all(), Rational(1, 3)), Threshold::at(Rational(1, 3)));
  PerturbationDeltaCache cache;
  const auto cls = ContinuityClass::lipschitz(2);
  auto direct = class_perturbation_delta(f, cls, Rational(1, 3));
  EXPECT_EQ(cache.get(f, cls, Rational(1, 3)), direct);
  EXPECT_EQ(cache.get(f, cls, Rational(1, 3)), direct);
}

TEST(ContinuousSequence, TrueOrbitUsesBaseMaps) {
  auto f = rotation4();
  auto r = realize_by_continuous_sequence(f, PseudoOrbit::finite(orbit(f, 0, 5), Rational(1, 10)),
                                          ContinuityClass::all(), Rational(1, 10));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(r.sequence().at(i), f);
}

TEST(ContinuousSequence, AllClassMatchesNonautonomousRealization) {
  Gen gen(35);
  for (int trial = 0; trial < 20; ++trial) {
    SystemMap f = gen.system(3, 6);
    const Rational delta = gen.delta(f);
    auto xs = PseudoOrbit::finite(gen.pseudo_orbit(f, delta, 7), delta);
    auto a = realize_by_continuous_sequence(f, xs, ContinuityClass::all(), delta);
    auto b = realize_nonautonomous(NonautonomousSystem::constant(f), xs);
    EXPECT_EQ(a.sequence(), b.sequence());
  }
}

TEST(ContinuousSequence, LipschitzGridReplaysOrNamesStep) {
  auto f = build_zoo("affine:a=1/2,b=1/4,m=16");
  const auto cls = ContinuityClass::lipschitz(2);
  const Rational eps(1, 5);
  Gen gen(36);
  int realized = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto points = gen.pseudo_orbit(f, Rational(1, 10), 6);
    try {
      auto r = realize_by_continuous_sequence(f, PseudoOrbit::finite(points, Rational(1, 10)), cls, eps);
      expect_replays(r, points);
      for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(cls.admits(r.sequence().at(i)));
      EXPECT_LE(r.rho_bound, eps);
      ++realized;
    } catch (const Infeasible& e) {
      EXPECT_EQ(std::string(e.what()).rfind("step ", 0), 0u);
    }
  }
  EXPECT_GT(realized, 0);
}

TEST(PrefixContinuous, ZeroLengthIsBase) {
  auto f = rotation4();
  auto r = realize_prefix_continuous(f, PseudoOrbit::finite({0, 0}, Rational(3, 10)), 0,
                                     ContinuityClass::all(), Rational(3, 10));
  EXPECT_EQ(r.map(), f);
}

TEST(PrefixContinuous, AllClassAgreesWithAutonomous) {
  Gen gen(37);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SystemMap f = gen.system(3, 7);
    const Rational delta = gen.delta(f);
    auto points = gen.pseudo_orbit(f, delta, 6);
    if (check_consistency(points)) continue;
    auto xs = PseudoOrbit::finite(points, delta);
    auto a = realize_prefix_continuous(f, xs, points.size() - 1, ContinuityClass::all(), delta);
    auto b = realize_autonomous(f, xs);
    EXPECT_EQ(a.map(), b.map());
    EXPECT_LT(a.rho_bound, delta);
    ++compared;
  }
  EXPECT_GT(compared, 10);
}

TEST(PrefixContinuous, LipschitzReplaysThroughN) {
  auto f = build_zoo("affine:a=1/2,b=1/4,m=16");
  const auto cls = ContinuityClass::lipschitz(2);
  auto points = orbit(f, 0, 3);
  points.push_back(f(points.back()) + 1 < 16 ? f(points.back()) + 1 : f(points.back()));
  const Rational delta(1, 5);
  auto r = realize_prefix_continuous(f, PseudoOrbit::finite(points, Rational(1, 10)), 4, cls, delta);
  expect_replays(r, points);
  EXPECT_TRUE(cls.admits(r.map()));
  EXPECT_LT(r.rho_bound, delta);
}

}  // namespace
}  // namespace shadowkit
