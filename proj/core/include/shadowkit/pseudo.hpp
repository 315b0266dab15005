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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "shadowkit/point_set.hpp"
#include "shadowkit/rational.hpp"
#include "shadowkit/system.hpp"

namespace shadowkit {

/// A point sequence x_0, x_1, ... tagged with the delta it is meant to satisfy.
///
/// With an empty period the sequence is the finite list `preperiod`.
/// Otherwise it is preperiod followed by period repeated forever.
struct PseudoOrbit {
  std::vector<Point> preperiod;
  std::vector<Point> period;
  Rational delta{1};

  static PseudoOrbit finite(std::vector<Point> points, Rational delta);
  static PseudoOrbit eventually_periodic(std::vector<Point> preperiod, std::vector<Point> period,
                                         Rational delta);

  bool is_finite() const { return period.empty(); }
  /// Number of stored points.
  std::size_t stored() const { return preperiod.size() + period.size(); }
  Point at(std::size_t i) const;
  /// Consecutive pairs that determine the whole sequence (includes the wrap edge).
  std::size_t transitions() const;
  /// First `count` points (count <= stored() for finite sequences).
  std::vector<Point> unroll(std::size_t count) const;

  friend bool operator==(const PseudoOrbit&, const PseudoOrbit&) = default;
};

/// First index i with d(f(x_i), x_{i+1}) >= delta, if any.
std::optional<std::size_t> pseudo_orbit_violation(const SystemMap& f, std::span<const Point> xs,
                                                  const Rational& delta);
std::optional<std::size_t> pseudo_orbit_violation(const SystemMap& f, const PseudoOrbit& xs,
                                                  const Rational& delta);
/// Time-indexed variant: d(f_i(x_i), x_{i+1}) < delta.
std::optional<std::size_t> pseudo_orbit_violation(const NonautonomousSystem& f,
                                                  const PseudoOrbit& xs, const Rational& delta);

inline bool is_pseudo_orbit(const SystemMap& f, std::span<const Point> xs, const Rational& delta) {
  return !pseudo_orbit_violation(f, xs, delta);
}
inline bool is_pseudo_orbit(const SystemMap& f, const PseudoOrbit& xs) {
  return !pseudo_orbit_violation(f, xs, xs.delta);
}
inline bool is_pseudo_orbit(const NonautonomousSystem& f, const PseudoOrbit& xs) {
  return !pseudo_orbit_violation(f, xs, xs.delta);
}

/// Edges (x, y) with d(f(x), y) < delta. Paths are exactly the delta-pseudo-orbits.
class DeltaGraph {
 public:
  DeltaGraph(const SystemMap& f, const Rational& delta);

  std::size_t size() const { return successors_.size(); }
  const Rational& delta() const { return delta_; }
  PointSet successors(Point x) const { return successors_[x]; }
  bool has_edge(Point x, Point y) const { return successors_[x].contains(y); }
  std::size_t edge_count() const;

 private:
  Rational delta_;
  std::vector<PointSet> successors_;
};

/// Survivor sets T_0 = B_eps(x_0), T_{i+1} = f(T_i) ∩ B_eps(x_{i+1}).
/// T_k holds the positions f^k(z) of every z whose orbit eps-shadows x_0..x_k.
std::vector<PointSet> shadow_survivors(const SystemMap& f, std::span<const Point> xs,
                                       const Rational& epsilon);
std::vector<PointSet> shadow_survivors(const NonautonomousSystem& f, std::span<const Point> xs,
                                       const Rational& epsilon);

/// Index at which the survivor set of the (possibly infinite) sequence
/// becomes empty, or nullopt when some f-orbit eps-shadows all of it.
std::optional<std::size_t> shadowing_failure(const SystemMap& f, std::span<const Point> preperiod,
                                             std::span<const Point> period,
                                             const Rational& epsilon);

struct SearchLimits {
  std::size_t max_states = std::size_t{1} << 22;
};

struct ShadowingVerdict {
  enum class Outcome { kHolds, kFails };

  Outcome outcome = Outcome::kHolds;
  Rational epsilon;
  Rational delta;
  /// On FAILS: a shortest pseudo-orbit prefix that no orbit eps-shadows.
  std::vector<Point> witness;
  /// Survivor sets along the witness; the last one is empty.
  std::vector<PointSet> survivor_trace;
  std::size_t states_explored = 0;

  bool holds() const { return outcome == Outcome::kHolds; }
};

/// Decides whether every delta-pseudo-orbit of f (finite or infinite) is
/// eps-shadowed by an f-orbit. Throws BudgetExceeded.
ShadowingVerdict decide_shadowing(const SystemMap& f, const Rational& epsilon,
                                  const Rational& delta, const SearchLimits& limits = {});

/// Product-state diameter n * 2^n, the prefix length that suffices for the oracle.
std::size_t oracle_horizon(std::size_t points);

/// Exhaustive check of every delta-pseudo-orbit prefix with at most
/// `horizon` points, straight from the definition: a prefix is shadowed iff
/// some start z has d(x_i, f^i(z)) < eps for every i. Prefixes are merged
/// only when they end at the same point with the same set of admissible
/// starts, which leaves the set of outcomes unchanged.
ShadowingVerdict brute_force_shadowing(const SystemMap& f, const Rational& epsilon,
                                       const Rational& delta, std::size_t horizon,
                                       const SearchLimits& limits = {});

/// Sorted distinct values of d(f(x), y); the delta-graph changes only there.
std::vector<Rational> delta_levels(const SystemMap& f);
/// One delta per delta-graph class: level[k+1] for class (level[k], level[k+1]],
/// and level.back() + 1 for the complete graph.
std::vector<Rational> delta_candidates(const SystemMap& f);
/// One eps per ball class of the space, same convention as delta_candidates.
std::vector<Rational> epsilon_candidates(const FiniteMetricSpace& space);

/// Largest delta threshold for a predicate that is monotone (nonincreasing)
/// in delta and can only change where the delta-graph of f changes.
/// Returns the half-open threshold: the predicate holds for all delta <= value.
Threshold threshold_search(const SystemMap& f, const std::function<bool(const Rational&)>& holds);

/// Shadowing modulus delta*(eps).
Threshold shadowing_modulus(const SystemMap& f, const Rational& epsilon,
                            const SearchLimits& limits = {});

}  // namespace shadowkit
