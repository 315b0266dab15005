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
#include "shadowkit/analyze.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "shadowkit/construct.hpp"
#include "shadowkit/errors.hpp"
#include "shadowkit/sweep.hpp"

namespace shadowkit {
namespace {

std::string points_text(const std::vector<Point>& points) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < points.size(); ++i) out << (i ? "," : "") << points[i];
  out << ']';
  return out.str();
}

// Visits every g with rho(f, g) < delta: fewest redefined points first, then
// lexicographic in (redefined points, new values). Stops when visit returns false.
template <typename Visit>
void for_each_nearby_map(const SystemMap& f, const Rational& delta, Visit&& visit) {
  const auto& space = *f.space();
  const std::size_t n = f.size();
  const std::uint32_t cutoff = space.levels_below(delta);
  std::vector<std::vector<Point>> alternatives(n);
  std::vector<Point> movable;
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (y != f(x) && space.level(f(x), y) < cutoff) alternatives[x].push_back(y);
    }
    if (!alternatives[x].empty()) movable.push_back(x);
  }
  std::vector<Point> image(f.image().begin(), f.image().end());
  if (!visit(SystemMap(f.space(), image))) return;
  for (std::size_t k = 1; k <= movable.size(); ++k) {
    std::vector<std::size_t> chosen(k);
    for (std::size_t i = 0; i < k; ++i) chosen[i] = i;
    for (;;) {
      std::vector<std::size_t> digit(k, 0);
      for (;;) {
        for (std::size_t i = 0; i < k; ++i) {
          const Point x = movable[chosen[i]];
          image[x] = alternatives[x][digit[i]];
        }
        if (!visit(SystemMap(f.space(), image))) return;
        std::size_t pos = k;
        while (pos > 0) {
          --pos;
          const Point x = movable[chosen[pos]];
          if (++digit[pos] < alternatives[x].size()) break;
          digit[pos] = 0;
          if (pos == 0) {
            pos = k + 1;
            break;
          }
        }
        if (pos == k + 1) break;
      }
      for (std::size_t i = 0; i < k; ++i) image[movable[chosen[i]]] = f(movable[chosen[i]]);
      // next combination
      std::size_t i = k;
      while (i > 0 && chosen[i - 1] == movable.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++chosen[i - 1];
      for (std::size_t j = i; j < k; ++j) chosen[j] = chosen[j - 1] + 1;
    }
  }
}

struct Candidate {
  std::size_t failure_index;
  std::vector<Point> prefix;
  SystemMap generator;
  EventualOrbit orbit;

  bool better_than(const Candidate& other) const {
    if (failure_index != other.failure_index) return failure_index < other.failure_index;
    return prefix < other.prefix;
  }
};

// Depth-first search over commitment maps. Every orbit of a map g with
// rho(f, g) < delta is a path of distinct points in the delta-graph closed by
// an edge back into the path, and every such shape is an orbit of f with the
// path edges committed. Class restrictions prune commitments that no
// admissible g extends.
class CommitmentSearch {
 public:
  CommitmentSearch(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                   const ContinuityClass& cls, const SearchLimits& limits)
      : f_(f),
        space_(*f.space()),
        epsilon_(epsilon),
        delta_(delta),
        cls_(cls),
        limits_(limits),
        graph_(f, delta),
        position_(f.size(), -1) {
    const std::uint32_t cutoff = space_.levels_below(epsilon);
    for (Point y = 0; y < f.size(); ++y) balls_.push_back(space_.ball_below_level(y, cutoff));
  }

  GeneratedVerdict run() {
    for (Point start = 0; start < f_.size(); ++start) {
      path_ = {start};
      trace_ = {balls_[start]};
      position_[start] = 0;
      descend();
      position_[start] = -1;
    }
    GeneratedVerdict verdict;
    verdict.orbits_examined = orbits_;
    if (!best_) return verdict;
    verdict.holds = false;
    verdict.failure_index = best_->failure_index;
    verdict.prefix = best_->prefix;
    FunctionalPseudoOrbit witness;
    witness.orbit = PseudoOrbit{best_->orbit.preperiod, best_->orbit.period, delta_};
    witness.commitment.assign(f_.size(), std::nullopt);
    for (Point p : best_->orbit.preperiod) witness.commitment[p] = best_->generator(p);
    for (Point p : best_->orbit.period) witness.commitment[p] = best_->generator(p);
    verdict.counterexample = std::move(witness);
    verdict.generator = best_->generator;
    return verdict;
  }

 private:
  std::optional<SystemMap> generator() {
    return find_completion(f_, commitments_, delta_, cls_, limits_);
  }

  void record(const SystemMap& g) {
    ++orbits_;
    EventualOrbit orbit = eventual_orbit(g, path_.front());
    auto failure = shadowing_failure(f_, orbit.preperiod, orbit.period, epsilon_);
    if (!failure) return;
    Candidate candidate{*failure, orbit.unroll(*failure + 1), g, std::move(orbit)};
    if (!best_ || candidate.better_than(*best_)) best_ = std::move(candidate);
  }

  void descend() {
    const Point x = path_.back();
    const PointSet image = f_.image_of(trace_.back());
    const std::size_t depth = path_.size();
    std::vector<Point> successors = graph_.successors(x).to_vector();
    for (Point y : successors) {
      if (++nodes_ > limits_.max_states) throw BudgetExceeded("commitment search", limits_.max_states);
      commitments_.emplace_back(x, y);
      if (cls_.is_all() || generator()) {
        const PointSet next = image & balls_[y];
        if (position_[y] >= 0 || next.empty()) {
          record(*generator());
        } else if (!best_ || best_->failure_index >= depth + 1) {
          position_[y] = static_cast<int>(depth);
          path_.push_back(y);
          trace_.push_back(next);
          descend();
          trace_.pop_back();
          path_.pop_back();
          position_[y] = -1;
        }
      }
      commitments_.pop_back();
    }
  }

  const SystemMap& f_;
  const FiniteMetricSpace& space_;
  Rational epsilon_;
  Rational delta_;
  ContinuityClass cls_;
  SearchLimits limits_;
  DeltaGraph graph_;
  std::vector<PointSet> balls_;
  std::vector<int> position_;
  std::vector<Point> path_;
  std::vector<PointSet> trace_;
  std::vector<std::pair<Point, Point>> commitments_;
  std::optional<Candidate> best_;
  std::size_t nodes_ = 0;
  std::size_t orbits_ = 0;
};

struct NonautState {
  std::uint64_t survivors;
  std::uint32_t point;
  std::uint32_t phase;
  friend bool operator==(const NonautState&, const NonautState&) = default;
};
struct NonautStateHash {
  std::size_t operator()(const NonautState& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.survivors ^ (std::uint64_t{s.point} << 40) ^
                                      (std::uint64_t{s.phase} * 0x9E3779B97F4A7C15ull));
  }
};

void require_positive(const Rational& epsilon, const Rational& delta) {
  if (epsilon <= 0 || delta <= 0) throw PreconditionError("epsilon and delta must be positive");
}

}  // namespace

StructuralVerdict structural_check(const SystemMap& f, const Rational& epsilon,
                                   const Rational& delta, const ContinuityClass& cls,
                                   const AnalysisOptions& options) {
  require_positive(epsilon, delta);
  require_graph_size(*f.space());
  StructuralVerdict verdict;
  if (f.size() <= options.exhaustive_map_points) {
    verdict.enumerated_maps = true;
    for_each_nearby_map(f, delta, [&](const SystemMap& g) {
      if (!cls.admits(g)) return true;
      if (++verdict.maps_examined > options.limits.max_states) {
        throw BudgetExceeded("structural_check", options.limits.max_states);
      }
      for (Point x = 0; x < f.size(); ++x) {
        EventualOrbit orbit = eventual_orbit(g, x);
        if (auto failure = shadowing_failure(f, orbit.preperiod, orbit.period, epsilon)) {
          verdict.holds = false;
          auto prefix = orbit.unroll(*failure + 1);
          verdict.counterexample =
              OrbitCounterexample{g, x, std::move(orbit), *failure, std::move(prefix)};
          return false;
        }
      }
      return true;
    });
    return verdict;
  }
  GeneratedVerdict generated = CommitmentSearch(f, epsilon, delta, cls, options.limits).run();
  verdict.maps_examined = generated.orbits_examined;
  if (!generated.holds) {
    verdict.holds = false;
    const auto& witness = *generated.counterexample;
    verdict.counterexample = OrbitCounterexample{
        *generated.generator, witness.orbit.at(0),
        EventualOrbit{witness.orbit.preperiod, witness.orbit.period}, generated.failure_index,
        generated.prefix};
  }
  return verdict;
}

NonautonomousVerdict structural_check_nonaut(const NonautonomousSystem& f,
                                             const Rational& epsilon, const Rational& delta,
                                             const SearchLimits& limits) {
  require_positive(epsilon, delta);
  const auto& space = *f.space();
  require_graph_size(space);
  const std::size_t n = space.size();
  const std::size_t pre = f.preperiod().size();
  const std::size_t phases = pre + f.period().size();
  auto advance = [&](std::size_t t) { return t + 1 < phases ? t + 1 : pre; };

  const std::uint32_t cutoff = space.levels_below(epsilon);
  std::vector<PointSet> balls(n);
  for (Point y = 0; y < n; ++y) balls[y] = space.ball_below_level(y, cutoff);
  std::vector<DeltaGraph> graphs;
  graphs.reserve(phases);
  for (std::size_t t = 0; t < phases; ++t) graphs.emplace_back(f.at(t), delta);

  struct Node {
    NonautState state;
    std::int64_t parent;
  };
  std::vector<Node> nodes;
  std::unordered_map<NonautState, std::size_t, NonautStateHash> seen;
  auto visit = [&](NonautState s, std::int64_t parent) {
    if (seen.emplace(s, nodes.size()).second) {
      nodes.push_back({s, parent});
      if (nodes.size() > limits.max_states) {
        throw BudgetExceeded("structural_check_nonaut", limits.max_states);
      }
    }
  };
  for (Point x = 0; x < n; ++x) visit({balls[x].bits(), x, 0}, -1);

  NonautonomousVerdict verdict;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const NonautState s = nodes[head].state;
    const SystemMap& step = f.at(s.phase);
    const PointSet image = step.image_of(PointSet{s.survivors});
    const auto next_phase = static_cast<std::uint32_t>(advance(s.phase));
    for (Point y : graphs[s.phase].successors(s.point).to_vector()) {
      const PointSet next = image & balls[y];
      if (next.empty()) {
        for (std::int64_t at = static_cast<std::int64_t>(head); at >= 0; at = nodes[at].parent) {
          verdict.witness.push_back(nodes[at].state.point);
          verdict.survivor_trace.push_back(PointSet{nodes[at].state.survivors});
        }
        std::reverse(verdict.witness.begin(), verdict.witness.end());
        std::reverse(verdict.survivor_trace.begin(), verdict.survivor_trace.end());
        verdict.witness.push_back(y);
        verdict.survivor_trace.push_back(PointSet{});
        verdict.holds = false;
        verdict.states_explored = nodes.size();
        verdict.generator =
            std::get<NonautonomousSystem>(
                realize_nonautonomous(f, PseudoOrbit::finite(verdict.witness, delta)).system);
        return verdict;
      }
      visit({next.bits(), y, next_phase}, static_cast<std::int64_t>(head));
    }
  }
  verdict.states_explored = nodes.size();
  return verdict;
}

GeneratedVerdict fgpotp_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                              const AnalysisOptions& options) {
  require_positive(epsilon, delta);
  return CommitmentSearch(f, epsilon, delta, ContinuityClass::all(), options.limits).run();
}

GeneratedVerdict cgpotp_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                              const ContinuityClass& cls, const AnalysisOptions& options) {
  require_positive(epsilon, delta);
  GeneratedVerdict verdict = CommitmentSearch(f, epsilon, delta, cls, options.limits).run();
  if (!verdict.holds && !(cls.admits(*verdict.generator) && rho(f, *verdict.generator) < delta)) {
    throw std::logic_error("cgpotp generator is not admissible");
  }
  return verdict;
}

UscVerdict usc_check(const SystemMap& f, const Rational& epsilon, const Rational& delta,
                     const ContinuityClass& cls, const AnalysisOptions& options) {
  require_positive(epsilon, delta);
  const auto& space = *f.space();
  const std::size_t n = f.size();
  const std::uint32_t cutoff = space.levels_below(epsilon);
  std::vector<char> seen(n * n);

  // sup_i d(g^i(x), f^i(z)) < eps, evaluated on the eventually periodic pair orbit.
  auto within = [&](const SystemMap& g, Point x, Point z) {
    std::fill(seen.begin(), seen.end(), 0);
    Point a = x;
    Point b = z;
    while (!seen[a * n + b]) {
      if (space.level(a, b) >= cutoff) return false;
      seen[a * n + b] = 1;
      a = g(a);
      b = f(b);
    }
    return true;
  };

  UscVerdict verdict;
  auto inspect = [&](const SystemMap& g) {
    if (!cls.admits(g)) return true;
    ++verdict.maps_examined;
    for (Point x = 0; x < n; ++x) {
      bool covered = false;
      for (Point z = 0; z < n && !covered; ++z) covered = within(g, x, z);
      if (!covered) {
        verdict.holds = false;
        verdict.counterexample = g;
        verdict.start = x;
        return false;
      }
    }
    return true;
  };

  if (n <= options.exhaustive_map_points) {
    verdict.exhaustive = true;
    for_each_nearby_map(f, delta, inspect);
    return verdict;
  }

  // Sample pool independent of eps and delta so verdicts stay monotone in both.
  const std::uint32_t delta_cutoff = space.levels_below(delta);
  auto near = [&](const SystemMap& g) {
    for (Point x = 0; x < n; ++x) {
      if (space.level(f(x), g(x)) >= delta_cutoff) return false;
    }
    return true;
  };
  if (!inspect(f)) return verdict;
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (y == f(x)) continue;
      SystemMap g = f.with(x, y);
      if (near(g) && !inspect(g)) return verdict;
    }
  }
  std::vector<std::vector<Point>> nearest(n);
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (y != f(x)) nearest[x].push_back(y);
    }
    std::stable_sort(nearest[x].begin(), nearest[x].end(), [&](Point a, Point b) {
      return space.level(f(x), a) < space.level(f(x), b);
    });
    nearest[x].resize(std::min<std::size_t>(nearest[x].size(), 3));
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.usc_samples; ++s) {
    std::vector<Point> image(f.image().begin(), f.image().end());
    for (Point x = 0; x < n; ++x) {
      if (rng() % 2 == 0 || nearest[x].empty()) continue;
      image[x] = nearest[x][rng() % nearest[x].size()];
    }
    SystemMap g(f.space(), std::move(image));
    if (near(g) && !inspect(g)) return verdict;
  }
  return verdict;
}

ModulusTable modulus_table(const SystemMap& f, const std::vector<Rational>& epsilon_grid,
                           const ContinuityClass& cls, const AnalysisOptions& options,
                           std::size_t jobs) {
  ModulusTable table;
  table.cls = cls;
  table.seed = options.seed;
  table.usc_exhaustive = f.size() <= options.exhaustive_map_points;
  table.usc_samples = table.usc_exhaustive ? 0 : options.usc_samples;
  table.rows = parallel_map(epsilon_grid.size(), jobs, [&](std::size_t i) {
    const Rational& eps = epsilon_grid[i];
    if (eps <= 0) throw PreconditionError("epsilon grid must be positive");
    ModulusRow row;
    row.epsilon = eps;
    row.shadow = shadowing_modulus(f, eps, options.limits);
    row.structural = threshold_search(
        f, [&](const Rational& d) { return structural_check(f, eps, d, cls, options).holds; });
    row.functional =
        threshold_search(f, [&](const Rational& d) { return fgpotp_check(f, eps, d, options).holds; });
    row.continuous = threshold_search(
        f, [&](const Rational& d) { return cgpotp_check(f, eps, d, cls, options).holds; });
    row.usc = threshold_search(
        f, [&](const Rational& d) { return usc_check(f, eps, d, cls, options).holds; });
    return row;
  });
  return table;
}

std::size_t EquivalenceReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed(); }));
}

EquivalenceReport equivalence_experiment(const SystemMap& f,
                                         const std::vector<Rational>& epsilon_grid,
                                         const ContinuityClass& cls,
                                         const AnalysisOptions& options, std::size_t jobs) {
  const std::vector<Rational> deltas = delta_candidates(f);
  const auto constant = NonautonomousSystem::constant(f);
  const bool enumerated = f.size() <= options.exhaustive_map_points;

  auto rows = parallel_map(epsilon_grid.size() * deltas.size(), jobs, [&](std::size_t k) {
    const Rational& eps = epsilon_grid[k / deltas.size()];
    const Rational& delta = deltas[k % deltas.size()];
    const Rational half = delta / 2;

    const auto shadow = decide_shadowing(f, eps, delta, options.limits);
    const auto shadow_half = decide_shadowing(f, eps, half, options.limits);
    const auto structural = structural_check(f, eps, delta, ContinuityClass::all(), options);
    const auto functional = fgpotp_check(f, eps, delta, options);
    const auto continuous = cgpotp_check(f, eps, delta, cls, options);
    const auto nonaut = structural_check_nonaut(constant, eps, delta, options.limits);

    const std::string half_detail =
        shadow_half.holds() ? "" : "delta/2 witness " + points_text(shadow_half.witness);
    std::vector<ImplicationCheck> out;
    auto add = [&](std::string name, bool lhs, bool rhs, bool equality, std::string detail) {
      out.push_back({std::move(name), eps, delta, lhs, rhs, equality, std::move(detail)});
    };
    add("shadow => structural", shadow.holds(), structural.holds, false,
        structural.holds ? "" : "g-orbit prefix " + points_text(structural.counterexample->prefix));
    add("structural => shadow(delta/2)", structural.holds, shadow_half.holds(), false, half_detail);
    add("fgpotp => shadow(delta/2)", functional.holds, shadow_half.holds(), false, half_detail);
    add("shadow => fgpotp", shadow.holds(), functional.holds, false,
        functional.holds ? "" : "generated prefix " + points_text(functional.prefix));
    add("structural_nonaut == shadow", nonaut.holds, shadow.holds(), true,
        shadow.holds() ? "" : "witness " + points_text(shadow.witness));
    add("structural == fgpotp", structural.holds, functional.holds, true, "");
    add("fgpotp => cgpotp", functional.holds, continuous.holds, false,
        continuous.holds ? "" : "continuous prefix " + points_text(continuous.prefix));
    if (cls.is_all()) {
      add("cgpotp == fgpotp", continuous.holds, functional.holds, true, "");
      add("cgpotp => shadow(delta/2)", continuous.holds, shadow_half.holds(), false, half_detail);
    } else if (enumerated) {
      const auto structural_cls = structural_check(f, eps, delta, cls, options);
      add("structural(class) == cgpotp", structural_cls.holds, continuous.holds, true, "");
    }
    return out;
  });

  EquivalenceReport report;
  report.cls = cls;
  for (auto& row : rows) {
    for (auto& check : row) report.checks.push_back(std::move(check));
  }
  return report;
}

SeparationReport separation_search(const std::vector<std::pair<std::string, SystemMap>>& family,
                                   const ContinuityClass& cls, std::size_t budget,
                                   const AnalysisOptions& options) {
  SeparationReport report;
  report.cls = cls;
  report.budget = budget;
  for (const auto& [name, f] : family) {
    if (report.pairs_examined >= budget) {
      report.budget_exhausted = true;
      break;
    }
    ++report.systems_examined;
    for (const Rational& eps : epsilon_candidates(*f.space())) {
      for (const Rational& delta : delta_candidates(f)) {
        if (report.pairs_examined >= budget) {
          report.budget_exhausted = true;
          return report;
        }
        ++report.pairs_examined;
        if (!cgpotp_check(f, eps, delta, cls, options).holds) continue;
        auto functional = fgpotp_check(f, eps, delta, options);
        if (functional.holds) continue;
        report.candidates.push_back(SeparationCandidate{name, eps, delta,
                                                        *functional.counterexample,
                                                        *functional.generator});
      }
    }
  }
  return report;
}

}  // namespace shadowkit
