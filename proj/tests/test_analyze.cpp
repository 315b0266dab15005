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

#include <algorithm>

#include "shadowkit/analyze.hpp"
#include "shadowkit/construct.hpp"
#include "shadowkit/errors.hpp"
#include "shadowkit/zoo.hpp"
#include "support/generators.hpp"

namespace shadowkit {
namespace {

using testing::Gen;

const Rational kEps(2, 5);
const Rational kDelta(3, 10);

SystemMap rotation4() { return build_zoo("rotation:m=4,k=1"); }

SystemMap equilateral_identity() {
  DistanceMatrix d(3, std::vector<Rational>(3, Rational(1)));
  for (int i = 0; i < 3; ++i) d[i][i] = 0;
  return SystemMap::identity(make_space({"a", "b", "c"}, d));
}

TEST(Structural, TinyDeltaAndHugeEpsilonHold) {
  Gen gen(41);
  for (int trial = 0; trial < 10; ++trial) {
    SystemMap f = gen.system(2, 5);
    const auto& space = *f.space();
    EXPECT_TRUE(structural_check(f, Rational(1, 1000), *space.min_positive_distance(), ContinuityClass::all()).holds);
    EXPECT_TRUE(structural_check(f, space.diameter() + 1, space.diameter() * 2, ContinuityClass::all()).holds);
  }
}

TEST(Structural, RotationCounterexampleFixesZero) {
  auto f = rotation4();
  auto v = structural_check(f, kEps, kDelta, ContinuityClass::all());
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.enumerated_maps);
  EXPECT_EQ(v.counterexample->g, f.with(0, 0));
  EXPECT_EQ(v.counterexample->start, 0u);
  EXPECT_EQ(v.counterexample->prefix, (std::vector<Point>{0, 0, 0, 0}));
}

TEST(Structural, CommitmentSearchMatchesEnumerationOnSixPoints) {
  Gen gen(42);
  AnalysisOptions enumerate;
  enumerate.exhaustive_map_points = 6;
  AnalysisOptions search;
  search.exhaustive_map_points = 5;
  for (int trial = 0; trial < 6; ++trial) {
    SystemMap f = gen.system(6, 6);
    for (int k = 0; k < 3; ++k) {
      const Rational eps = gen.epsilon(*f.space());
      const Rational delta = gen.delta(f);
      auto a = structural_check(f, eps, delta, ContinuityClass::all(), enumerate);
      auto b = structural_check(f, eps, delta, ContinuityClass::all(), search);
      ASSERT_TRUE(a.enumerated_maps);
      ASSERT_FALSE(b.enumerated_maps);
      EXPECT_EQ(a.holds, b.holds) << "trial " << trial;
    }
  }
}

TEST(StructuralNonaut, ConstantSequenceMatchesDecision) {
  Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    SystemMap f = gen.system(2, 6);
    const Rational eps = gen.epsilon(*f.space());
    const Rational delta = gen.delta(f);
    auto a = structural_check_nonaut(NonautonomousSystem::constant(f), eps, delta);
    auto b = decide_shadowing(f, eps, delta);
    ASSERT_EQ(a.holds, b.holds());
    if (!a.holds) EXPECT_EQ(a.witness.size(), b.witness.size());
  }
}

TEST(StructuralNonaut, HugeEpsilonHolds) {
  Gen gen(44);
  auto space = gen.space(5);
  NonautonomousSystem F({gen.map(space)}, {gen.map(space), gen.map(space)});
  EXPECT_TRUE(structural_check_nonaut(F, space->diameter() + 1, space->diameter() * 2).holds);
}

TEST(StructuralNonaut, SampledNearbySequencesNeverContradict) {
  Gen gen(45);
  for (int trial = 0; trial < 5; ++trial) {
    auto space = gen.space(5);
    NonautonomousSystem F({}, {gen.map(space), gen.map(space)});
    const Rational eps = space->diameter() / 3;
    const Rational delta = space->diameter() / 4;
    auto verdict = structural_check_nonaut(F, eps, delta);
    if (!verdict.holds) {
      // The generator is delta-close and its orbit is the unshadowable witness.
      const auto& G = *verdict.generator;
      EXPECT_LT(rho_seq(F, G), delta);
      EXPECT_EQ(orbit_nonaut(G, verdict.witness[0], verdict.witness.size() - 1), verdict.witness);
      EXPECT_TRUE(shadow_survivors(F, verdict.witness, eps).back().empty());
      continue;
    }
    // HOLDS: every sampled nearby 2-periodic sequence has all orbits shadowed.
    for (int sample = 0; sample < 200; ++sample) {
      NonautonomousSystem G({}, {gen.nearby(F.at(0), delta), gen.nearby(F.at(1), delta)});
      for (Point x = 0; x < 5; ++x) {
        auto xs = orbit_nonaut(G, x, 5 * 2 * 32);
        EXPECT_FALSE(shadow_survivors(F, xs, eps).back().empty());
      }
    }
  }
}

TEST(Fgpotp, TinyDeltaHolds) {
  Gen gen(46);
  SystemMap f = gen.system(3, 7);
  EXPECT_TRUE(fgpotp_check(f, Rational(1, 1000), *f.space()->min_positive_distance()).holds);
}

TEST(Fgpotp, RotationConstantCommitment) {
  auto f = rotation4();
  auto v = fgpotp_check(f, kEps, kDelta);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.prefix, (std::vector<Point>{0, 0, 0, 0}));
  EXPECT_EQ(v.counterexample->orbit.period, (std::vector<Point>{0}));
  EXPECT_EQ(v.counterexample->commitment[0], Point{0});
  EXPECT_FALSE(check_consistency(v.counterexample->orbit));
  // realize_autonomous rebuilds a generator from the functional pseudo-orbit.
  auto r = realize_autonomous(f, v.counterexample->orbit);
  EXPECT_LE(r.rho_bound, kDelta);
}

TEST(Fgpotp, AgreesWithStructuralOnAllSmallSystems) {
  // Every map on two fixed metrics of size 3 and 4, over the full grids.
  Gen gen(47);
  for (std::size_t n : {3u, 4u}) {
    auto space = gen.space(n);
    std::vector<Point> image(n, 0);
    for (;;) {
      SystemMap f(space, image);
      for (const Rational& eps : epsilon_candidates(*space)) {
        for (const Rational& delta : delta_candidates(f)) {
          ASSERT_EQ(fgpotp_check(f, eps, delta).holds,
                    structural_check(f, eps, delta, ContinuityClass::all()).holds);
        }
      }
      std::size_t pos = 0;
      while (pos < n && ++image[pos] == n) image[pos++] = 0;
      if (pos == n) break;
    }
  }
}

TEST(Cgpotp, AllClassIdenticalToFgpotp) {
  Gen gen(48);
  for (int trial = 0; trial < 20; ++trial) {
    SystemMap f = gen.system(2, 6);
    const Rational eps = gen.epsilon(*f.space());
    const Rational delta = gen.delta(f);
    auto a = cgpotp_check(f, eps, delta, ContinuityClass::all());
    auto b = fgpotp_check(f, eps, delta);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.prefix, b.prefix);
  }
}

TEST(Cgpotp, LipschitzOnEightPointGrid) {
  auto f = build_zoo("tent:m=8");
  const auto cls = ContinuityClass::lipschitz(2);
  for (const Rational& eps : {Rational(1, 7), Rational(2, 7), Rational(3, 7)}) {
    for (const Rational& delta : delta_candidates(f)) {
      auto fg = fgpotp_check(f, eps, delta);
      auto cg = cgpotp_check(f, eps, delta, cls);
      if (fg.holds) EXPECT_TRUE(cg.holds);
      if (!cg.holds) {
        EXPECT_TRUE(cls.admits(*cg.generator));
        EXPECT_LT(rho(f, *cg.generator), delta);
        EXPECT_EQ(orbit(*cg.generator, cg.prefix[0], cg.prefix.size() - 1), cg.prefix);
      }
    }
  }
  EXPECT_TRUE(cgpotp_check(f, Rational(2), Rational(1, 2), cls).holds);
}

TEST(Usc, IdentityNeighbourhoodAndTinyDelta) {
  Gen gen(49);
  SystemMap f = gen.system(3, 5);
  EXPECT_TRUE(usc_check(f, Rational(1, 1000), *f.space()->min_positive_distance(), ContinuityClass::all()).holds);
}

TEST(Usc, RotationFailsThroughFixingPerturbation) {
  auto f = rotation4();
  auto v = usc_check(f, Rational(1, 5), kDelta, ContinuityClass::all());
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_EQ(*v.counterexample, f.with(0, 0));
  EXPECT_EQ(v.start, 0u);
}

TEST(Usc, ForwardDirectionFromHalfEpsilonShadowing) {
  Gen gen(50);
  for (int trial = 0; trial < 15; ++trial) {
    SystemMap f = gen.system(2, 4);
    for (const Rational& eps : epsilon_candidates(*f.space())) {
      for (const Rational& delta : delta_candidates(f)) {
        if (decide_shadowing(f, eps / 2, delta).holds()) {
          EXPECT_TRUE(usc_check(f, eps, delta, ContinuityClass::all()).holds);
        }
      }
    }
  }
}

TEST(Usc, SampledModeRecordsItself) {
  auto f = build_zoo("tent:m=9");
  AnalysisOptions options;
  options.usc_samples = 50;
  auto v = usc_check(f, Rational(1, 4), Rational(1, 8), ContinuityClass::all(), options);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_GT(v.maps_examined, 0u);
}

TEST(ModulusTable, IdentityOnEquilateralSpace) {
  auto table = modulus_table(equilateral_identity(), {Rational(1, 2), Rational(1), Rational(3, 2)},
                             ContinuityClass::all());
  const Threshold one = Threshold::at(1);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& row = table.rows[i];
    EXPECT_EQ(row.shadow, one);
    EXPECT_EQ(row.structural, one);
    EXPECT_EQ(row.functional, one);
    EXPECT_EQ(row.continuous, one);
    EXPECT_EQ(row.usc, one);
  }
  EXPECT_EQ(table.rows[2].shadow, Threshold::infinite());
  EXPECT_EQ(table.rows[2].usc, Threshold::infinite());
}

TEST(ModulusTable, RotationCollapsesToSpacing) {
  auto f = rotation4();
  auto table = modulus_table(f, {Rational(1, 16), Rational(1, 8), Rational(3, 16)}, ContinuityClass::all(), {}, 2);
  for (const auto& row : table.rows) {
    for (const Threshold& t : {row.shadow, row.structural, row.functional, row.continuous, row.usc}) {
      EXPECT_EQ(t, Threshold::at(Rational(1, 4)));
    }
  }
}

TEST(ModulusTable, JobsDoNotChangeResults) {
  auto f = build_zoo("random:n=5,seed=7");
  std::vector<Rational> grid;
  for (int k = 1; k <= 6; ++k) grid.push_back(f.space()->diameter() * k / 6);
  auto a = modulus_table(f, grid, ContinuityClass::all(), {}, 1);
  auto b = modulus_table(f, grid, ContinuityClass::all(), {}, 4);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].shadow, b.rows[i].shadow);
    EXPECT_EQ(a.rows[i].usc, b.rows[i].usc);
  }
}

TEST(Equivalence, IdentityRowHasNoViolations) {
  auto report = equivalence_experiment(equilateral_identity(), {Rational(1, 2), Rational(3, 2)},
                                       ContinuityClass::all());
  EXPECT_EQ(report.violations(), 0u);
  EXPECT_FALSE(report.checks.empty());
}

TEST(Equivalence, RotationBothSidesFalseWhereExpected) {
  auto report = equivalence_experiment(rotation4(), {kEps}, ContinuityClass::all());
  EXPECT_EQ(report.violations(), 0u);
  auto it = std::find_if(report.checks.begin(), report.checks.end(), [](const auto& c) {
    return c.name == "structural == fgpotp" && c.delta == Rational(1, 2);
  });
  ASSERT_NE(it, report.checks.end());
  EXPECT_FALSE(it->lhs);
  EXPECT_FALSE(it->rhs);
}

TEST(Equivalence, HalvingReductionFailsForSingleMaps) {
  // A structural verdict for single maps does not carry over to delta/2
  // pseudo-orbits: (2,2,2,1) leaves 2 by two different successors, so no
  // single nearby map produces it, yet no orbit of f shadows it.
  auto f = build_zoo("random:n=5,seed=59");
  ASSERT_EQ(std::vector<Point>(f.image().begin(), f.image().end()), (std::vector<Point>{4, 0, 3, 1, 4}));
  EXPECT_TRUE(structural_check(f, kEps, kDelta, ContinuityClass::all()).holds);
  auto half = decide_shadowing(f, kEps, kDelta / 2);
  EXPECT_FALSE(half.holds());
  EXPECT_EQ(half.witness, (std::vector<Point>{2, 2, 2, 1}));
  EXPECT_TRUE(check_consistency(half.witness));
  // The nonautonomous form of the statement still holds exactly.
  EXPECT_FALSE(structural_check_nonaut(NonautonomousSystem::constant(f), kEps, kDelta / 2).holds);
}

TEST(Separation, AllClassFindsNothing) {
  auto report = separation_search(expand_zoo_family("tent:m=3..6"), ContinuityClass::all(), 500);
  EXPECT_TRUE(report.candidates.empty());
  EXPECT_EQ(report.systems_examined, 4u);
}

TEST(Separation, BudgetIsHonoured) {
  auto report = separation_search(expand_zoo_family("tent:m=3..9"), ContinuityClass::lipschitz(2), 10);
  EXPECT_TRUE(report.budget_exhausted);
  EXPECT_EQ(report.pairs_examined, 10u);
  for (const auto& c : report.candidates) EXPECT_LT(rho(build_zoo(c.system), c.generator), c.delta);
}

}  // namespace
}  // namespace shadowkit
