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
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowkit/pseudo.hpp"
#include "shadowkit/rational.hpp"
#include "shadowkit/system.hpp"

namespace shadowkit {

struct AnalysisOptions {
  SearchLimits limits;
  /// Spaces up to this size enumerate the nearby maps g directly.
  std::size_t exhaustive_map_points = 5;
  /// Random nearby maps drawn by usc_check above the exhaustive cutoff
  /// (all single-point redefinitions are always included as well).
  std::size_t usc_samples = 2000;
  std::uint64_t seed = 0x5eedULL;
};

/// A nearby map g and a point whose g-orbit no f-orbit eps-shadows.
struct OrbitCounterexample {
  SystemMap g;
  Point start = 0;
  EventualOrbit orbit;
  /// Index into the unrolled orbit where the survivor set empties.
  std::size_t failure_index = 0;
  /// Orbit points 0..failure_index.
  std::vector<Point> prefix;
};

struct StructuralVerdict {
  bool holds = true;
  std::optional<OrbitCounterexample> counterexample;
  std::size_t maps_examined = 0;
  /// True when the nearby maps were enumerated; false for the commitment search.
  bool enumerated_maps = false;
};

/// Is every g-orbit eps-shadowed by an f-orbit, for every class-admissible g
/// with rho(f, g) < delta? Counterexamples are the first in breadth-first
/// order: fewest redefined points, then lexicographic.
StructuralVerdict structural_check(const SystemMap& f, const Rational& epsilon,
                                   const Rational& delta, const ContinuityClass& cls,
                                   const AnalysisOptions& options = {});

struct NonautonomousVerdict {
  bool holds = true;
  /// Shortest delta-pseudo-orbit prefix that no orbit of F eps-shadows.
  std::vector<Point> witness;
  std::vector<PointSet> survivor_trace;
  /// A sequence G with rho_seq(F, G) < delta whose orbit is the witness.
  std::optional<NonautonomousSystem> generator;
  std::size_t states_explored = 0;
};

/// Same quantifier over map sequences G with rho_seq(F, G) < delta. Their
/// orbits are exactly the delta-pseudo-orbits of F, so this runs the survivor
/// automaton with states (time phase, point, survivors).
NonautonomousVerdict structural_check_nonaut(const NonautonomousSystem& f,
                                             const Rational& epsilon, const Rational& delta,
                                             const SearchLimits& limits = {});

/// A consistent pseudo-orbit with the map it commits to on its support.
struct FunctionalPseudoOrbit {
  PseudoOrbit orbit;
  /// commitment[x] = successor of x wherever x occurs in the orbit.
  std::vector<std::optional<Point>> commitment;
};

struct GeneratedVerdict {
  bool holds = true;
  std::optional<FunctionalPseudoOrbit> counterexample;
  /// A map g with rho(f, g) < delta whose orbit of the first point is the counterexample.
  std::optional<SystemMap> generator;
  std::size_t failure_index = 0;
  std::vector<Point> prefix;
  std::size_t orbits_examined = 0;
};

/// Every functionally generated delta-pseudo-orbit is eps-shadowed.
/// Exact depth-first search over commitment maps.
GeneratedVerdict fgpotp_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                              const AnalysisOptions& options = {});

/// As fgpotp_check, restricted to orbits of class-admissible generators.
GeneratedVerdict cgpotp_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                              const ContinuityClass& cls, const AnalysisOptions& options = {});

struct UscVerdict {
  bool holds = true;
  std::optional<SystemMap> counterexample;
  Point start = 0;
  bool exhaustive = false;
  std::size_t maps_examined = 0;
};

/// Orbit-set inclusion O(g) ⊆ B_eps(O(f)) in the uniform metric for every
/// class-admissible g with rho(f, g) < delta; distances between orbits are
/// computed over the eventually periodic orbit pairs.
UscVerdict usc_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                     const ContinuityClass& cls, const AnalysisOptions& options = {});

struct ModulusRow {
  Rational epsilon;
  Threshold shadow;
  Threshold structural;
  Threshold functional;
  Threshold continuous;
  Threshold usc;
};

struct ModulusTable {
  ContinuityClass cls = ContinuityClass::all();
  std::vector<ModulusRow> rows;
  std::uint64_t seed = 0;
  std::size_t usc_samples = 0;
  bool usc_exhaustive = true;
};

ModulusTable modulus_table(const SystemMap& f, const std::vector<Rational>& epsilon_grid,
                           const ContinuityClass& cls, const AnalysisOptions& options = {},
                           std::size_t jobs = 1);

struct ImplicationCheck {
  std::string name;
  Rational epsilon;
  Rational delta;
  bool lhs = false;
  bool rhs = false;
  /// Equalities pass when lhs == rhs; implications when !lhs || rhs.
  bool equality = false;
  std::string detail;

  bool passed() const { return equality ? lhs == rhs : (!lhs || rhs); }
};

struct EquivalenceReport {
  ContinuityClass cls = ContinuityClass::all();
  std::vector<ImplicationCheck> checks;

  std::size_t violations() const;
};

/// Runs the implication lattice between shadowing, the structural property,
/// FGPOTP, CGPOTP and the nonautonomous structural property for each eps in
/// the grid and each delta-graph class of f.
EquivalenceReport equivalence_experiment(const SystemMap& f,
                                         const std::vector<Rational>& epsilon_grid,
                                         const ContinuityClass& cls,
                                         const AnalysisOptions& options = {},
                                         std::size_t jobs = 1);

struct SeparationCandidate {
  std::string system;
  Rational epsilon;
  Rational delta;
  FunctionalPseudoOrbit fgpotp_witness;
  SystemMap generator;
};

struct SeparationReport {
  ContinuityClass cls = ContinuityClass::all();
  std::size_t budget = 0;
  std::size_t systems_examined = 0;
  std::size_t pairs_examined = 0;
  bool budget_exhausted = false;
  std::vector<SeparationCandidate> candidates;
};

/// Looks for (f, eps, delta) where CGPOTP holds but FGPOTP fails. Examines at
/// most `budget` (eps, delta) pairs in total. Never concludes anything
/// beyond the list of candidates found.
SeparationReport separation_search(const std::vector<std::pair<std::string, SystemMap>>& family,
                                   const ContinuityClass& cls, std::size_t budget,
                                   const AnalysisOptions& options = {});

}  // namespace shadowkit
