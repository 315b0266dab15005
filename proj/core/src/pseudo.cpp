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
#include "shadowkit/pseudo.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "shadowkit/errors.hpp"

namespace shadowkit {

PseudoOrbit PseudoOrbit::finite(std::vector<Point> points, Rational delta) {
  return PseudoOrbit{std::move(points), {}, std::move(delta)};
}

PseudoOrbit PseudoOrbit::eventually_periodic(std::vector<Point> preperiod,
                                             std::vector<Point> period, Rational delta) {
  if (period.empty()) throw PreconditionError("eventually periodic sequence needs a period");
  return PseudoOrbit{std::move(preperiod), std::move(period), std::move(delta)};
}

Point PseudoOrbit::at(std::size_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  if (period.empty()) throw std::out_of_range("index past the end of a finite pseudo-orbit");
  return period[(i - preperiod.size()) % period.size()];
}

std::size_t PseudoOrbit::transitions() const {
  if (is_finite()) return preperiod.empty() ? 0 : preperiod.size() - 1;
  return stored();
}

std::vector<Point> PseudoOrbit::unroll(std::size_t count) const {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

std::optional<std::size_t> pseudo_orbit_violation(const SystemMap& f, std::span<const Point> xs,
                                                  const Rational& delta) {
  const auto& space = *f.space();
  const std::uint32_t cutoff = space.levels_below(delta);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (space.level(f(xs[i]), xs[i + 1]) >= cutoff) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> pseudo_orbit_violation(const SystemMap& f, const PseudoOrbit& xs,
                                                  const Rational& delta) {
  const auto& space = *f.space();
  const std::uint32_t cutoff = space.levels_below(delta);
  for (std::size_t i = 0; i < xs.transitions(); ++i) {
    if (space.level(f(xs.at(i)), xs.at(i + 1)) >= cutoff) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> pseudo_orbit_violation(const NonautonomousSystem& f,
                                                  const PseudoOrbit& xs, const Rational& delta) {
  const auto& space = *f.space();
  const std::uint32_t cutoff = space.levels_below(delta);
  std::size_t steps = xs.transitions();
  if (!xs.is_finite()) {
    steps = aligned_window(window_of(f), Window{xs.preperiod.size(), xs.period.size()}).length();
  }
  for (std::size_t i = 0; i < steps; ++i) {
    if (space.level(f.at(i)(xs.at(i)), xs.at(i + 1)) >= cutoff) return i;
  }
  return std::nullopt;
}

DeltaGraph::DeltaGraph(const SystemMap& f, const Rational& delta) : delta_(delta) {
  if (delta <= 0) throw PreconditionError("delta must be positive");
  const auto& space = *f.space();
  require_graph_size(space);
  const std::uint32_t cutoff = space.levels_below(delta);
  successors_.reserve(f.size());
  for (Point x = 0; x < f.size(); ++x) successors_.push_back(space.ball_below_level(f(x), cutoff));
}

std::size_t DeltaGraph::edge_count() const {
  std::size_t total = 0;
  for (auto s : successors_) total += s.size();
  return total;
}

std::vector<PointSet> shadow_survivors(const SystemMap& f, std::span<const Point> xs,
                                       const Rational& epsilon) {
  const auto& space = *f.space();
  require_graph_size(space);
  const std::uint32_t cutoff = space.levels_below(epsilon);
  std::vector<PointSet> trace;
  trace.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const PointSet ball = space.ball_below_level(xs[i], cutoff);
    trace.push_back(i == 0 ? ball : (f.image_of(trace.back()) & ball));
  }
  return trace;
}

std::vector<PointSet> shadow_survivors(const NonautonomousSystem& f, std::span<const Point> xs,
                                       const Rational& epsilon) {
  const auto& space = *f.space();
  require_graph_size(space);
  const std::uint32_t cutoff = space.levels_below(epsilon);
  std::vector<PointSet> trace;
  trace.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const PointSet ball = space.ball_below_level(xs[i], cutoff);
    trace.push_back(i == 0 ? ball : (f.at(i - 1).image_of(trace.back()) & ball));
  }
  return trace;
}

std::optional<std::size_t> shadowing_failure(const SystemMap& f, std::span<const Point> preperiod,
                                             std::span<const Point> period,
                                             const Rational& epsilon) {
  const auto& space = *f.space();
  require_graph_size(space);
  const std::uint32_t cutoff = space.levels_below(epsilon);
  const std::size_t pre = preperiod.size();
  const std::size_t per = period.size();
  auto point_at = [&](std::size_t i) { return i < pre ? preperiod[i] : period[(i - pre) % per]; };

  // The survivor update is deterministic, so once the survivor set at the
  // start of the period repeats, the remaining infinite tail repeats too.
  std::unordered_set<PointSet> seen_at_phase_zero;
  PointSet survivors;
  for (std::size_t i = 0;; ++i) {
    if (per == 0 && i == pre) return std::nullopt;
    const PointSet ball = space.ball_below_level(point_at(i), cutoff);
    survivors = i == 0 ? ball : (f.image_of(survivors) & ball);
    if (survivors.empty()) return i;
    if (per != 0 && i >= pre && (i - pre) % per == 0) {
      if (!seen_at_phase_zero.insert(survivors).second) return std::nullopt;
    }
  }
}

namespace {

struct ProductState {
  std::uint64_t survivors;
  Point point;
  friend bool operator==(const ProductState&, const ProductState&) = default;
};

struct ProductStateHash {
  std::size_t operator()(const ProductState& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.survivors * 0x9E3779B97F4A7C15ull ^ s.point);
  }
};

constexpr std::uint32_t kNoParent = static_cast<std::uint32_t>(-1);

}  // namespace

// Search over product states (x, T): x is the current pseudo-orbit point and
// T the survivor set of the prefix read so far. A prefix is eps-shadowed iff
// its T is nonempty, and every continuation depends on (x, T) alone, so the
// reachable product states summarize all finite delta-pseudo-orbits.
//
// FAILS is a finite event: some prefix reaches T = {}. Conversely, if no
// reachable state has an empty survivor set, take an infinite pseudo-orbit
// and let Z_k be the starts z that eps-shadow its first k points. Each Z_k is
// nonempty (|Z_k| = number of orbits reaching T_k, T_k nonempty) and the Z_k
// are nested subsets of the finite set X, so their intersection is nonempty;
// any z in it eps-shadows the whole infinite pseudo-orbit. Hence HOLDS covers
// infinite pseudo-orbits as well.
ShadowingVerdict decide_shadowing(const SystemMap& f, const Rational& epsilon,
                                  const Rational& delta, const SearchLimits& limits) {
  if (epsilon <= 0 || delta <= 0) throw PreconditionError("epsilon and delta must be positive");
  const auto& space = *f.space();
  require_graph_size(space);
  const std::size_t n = f.size();
  const std::uint32_t eps_cutoff = space.levels_below(epsilon);
  std::vector<PointSet> balls(n);
  for (Point y = 0; y < n; ++y) balls[y] = space.ball_below_level(y, eps_cutoff);
  const DeltaGraph graph(f, delta);

  struct Node {
    ProductState state;
    std::uint32_t parent;
  };
  std::vector<Node> nodes;
  // Per point, the minimal survivor sets pushed so far. Survivor updates are
  // monotone in the set, and nodes are pushed in order of depth, so a state
  // whose set contains an earlier one at the same point cannot fail sooner.
  std::vector<std::vector<std::uint64_t>> minimal(n);
  auto push = [&](ProductState s, std::uint32_t parent) {
    auto& sets = minimal[s.point];
    for (std::uint64_t t : sets) {
      if ((t & ~s.survivors) == 0) return;
    }
    std::erase_if(sets, [&](std::uint64_t t) { return (s.survivors & ~t) == 0; });
    sets.push_back(s.survivors);
    nodes.push_back({s, parent});
    if (nodes.size() > limits.max_states) throw BudgetExceeded("decide_shadowing", limits.max_states);
  };
  for (Point x = 0; x < n; ++x) push({balls[x].bits(), x}, kNoParent);

  ShadowingVerdict verdict;
  verdict.epsilon = epsilon;
  verdict.delta = delta;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const ProductState current = nodes[head].state;
    const PointSet image = f.image_of(PointSet{current.survivors});
    const PointSet successors = graph.successors(current.point);
    std::optional<Point> dead_end;
    successors.for_each([&](Point y) {
      if (dead_end) return;
      const PointSet next = image & balls[y];
      if (next.empty()) {
        dead_end = y;
      } else {
        push({next.bits(), y}, static_cast<std::uint32_t>(head));
      }
    });
    if (dead_end) {
      for (std::uint32_t at = static_cast<std::uint32_t>(head); at != kNoParent; at = nodes[at].parent) {
        verdict.witness.push_back(nodes[at].state.point);
        verdict.survivor_trace.push_back(PointSet{nodes[at].state.survivors});
      }
      std::reverse(verdict.witness.begin(), verdict.witness.end());
      std::reverse(verdict.survivor_trace.begin(), verdict.survivor_trace.end());
      verdict.witness.push_back(*dead_end);
      verdict.survivor_trace.push_back(PointSet{});
      verdict.outcome = ShadowingVerdict::Outcome::kFails;
      verdict.states_explored = nodes.size();
      return verdict;
    }
  }
  verdict.states_explored = nodes.size();
  return verdict;
}

std::size_t oracle_horizon(std::size_t points) {
  if (points >= 32) throw PreconditionError("oracle horizon overflows for large spaces");
  return points << points;
}

ShadowingVerdict brute_force_shadowing(const SystemMap& f, const Rational& epsilon,
                                       const Rational& delta, std::size_t horizon,
                                       const SearchLimits& limits) {
  if (epsilon <= 0 || delta <= 0) throw PreconditionError("epsilon and delta must be positive");
  const auto& space = *f.space();
  require_graph_size(space);
  const std::size_t n = f.size();

  // Direct rational comparisons; no use of the ranked levels.
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n));
  std::vector<std::vector<bool>> close(n, std::vector<bool>(n));
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      edge[x][y] = space.distance(f(x), y) < delta;
      close[x][y] = space.distance(x, y) < epsilon;
    }
  }

  struct Node {
    Point point;
    std::uint64_t starts;  // z whose orbit has eps-shadowed the prefix so far
    std::uint32_t parent;
  };
  std::vector<Node> nodes;
  std::vector<Point> position(n);  // f^k(z)
  for (Point z = 0; z < n; ++z) position[z] = z;

  std::vector<std::uint32_t> level;
  for (Point x = 0; x < n; ++x) {
    std::uint64_t starts = 0;
    for (Point z = 0; z < n; ++z) {
      if (close[x][position[z]]) starts |= std::uint64_t{1} << z;
    }
    level.push_back(static_cast<std::uint32_t>(nodes.size()));
    nodes.push_back({x, starts, kNoParent});
  }

  ShadowingVerdict verdict;
  verdict.epsilon = epsilon;
  verdict.delta = delta;
  for (std::size_t length = 1; length < horizon && !level.empty(); ++length) {
    for (Point z = 0; z < n; ++z) position[z] = f(position[z]);
    std::unordered_set<ProductState, ProductStateHash> merged;
    std::vector<std::uint32_t> next_level;
    for (std::uint32_t id : level) {
      const Node node = nodes[id];
      for (Point y = 0; y < n; ++y) {
        if (!edge[node.point][y]) continue;
        std::uint64_t starts = 0;
        for (Point z = 0; z < n; ++z) {
          if (((node.starts >> z) & 1u) && close[y][position[z]]) starts |= std::uint64_t{1} << z;
        }
        if (starts == 0) {
          for (std::uint32_t at = id; at != kNoParent; at = nodes[at].parent) {
            verdict.witness.push_back(nodes[at].point);
          }
          std::reverse(verdict.witness.begin(), verdict.witness.end());
          verdict.witness.push_back(y);
          verdict.survivor_trace = shadow_survivors(f, verdict.witness, epsilon);
          if (!verdict.survivor_trace.back().empty()) {
            throw std::logic_error("oracle witness does not replay to an empty survivor set");
          }
          verdict.outcome = ShadowingVerdict::Outcome::kFails;
          verdict.states_explored = nodes.size();
          return verdict;
        }
        if (merged.insert({starts, y}).second) {
          next_level.push_back(static_cast<std::uint32_t>(nodes.size()));
          nodes.push_back({y, starts, id});
          if (nodes.size() > limits.max_states) {
            throw BudgetExceeded("brute_force_shadowing", limits.max_states);
          }
        }
      }
    }
    level = std::move(next_level);
  }
  verdict.states_explored = nodes.size();
  return verdict;
}

std::vector<Rational> delta_levels(const SystemMap& f) {
  const auto& space = *f.space();
  std::vector<std::uint32_t> ranks;
  for (Point x = 0; x < f.size(); ++x) {
    for (Point y = 0; y < f.size(); ++y) ranks.push_back(space.level(f(x), y));
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  std::vector<Rational> out;
  out.reserve(ranks.size());
  for (auto r : ranks) out.push_back(space.levels()[r]);
  return out;
}

namespace {

std::vector<Rational> class_representatives(const std::vector<Rational>& levels) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k < levels.size(); ++k) out.push_back(levels[k]);
  out.push_back(levels.back() + 1);
  return out;
}

}  // namespace

std::vector<Rational> delta_candidates(const SystemMap& f) {
  return class_representatives(delta_levels(f));
}

std::vector<Rational> epsilon_candidates(const FiniteMetricSpace& space) {
  return class_representatives(space.levels());
}

Threshold threshold_search(const SystemMap& f, const std::function<bool(const Rational&)>& holds) {
  const std::vector<Rational> levels = delta_levels(f);
  const std::vector<Rational> reps = class_representatives(levels);
  if (!holds(reps.front())) return Threshold::at(0);
  // Gallop upward from the smallest class before bisecting: the predicate is
  // monotone, and probes at large delta are the expensive ones.
  std::size_t lo = 0;            // known to hold
  std::size_t hi = reps.size();  // first class known to fail (or one past the end)
  for (std::size_t step = 1; lo + step < hi; step *= 2) {
    if (!holds(reps[lo + step])) {
      hi = lo + step;
      break;
    }
    lo += step;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (holds(reps[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo + 1 == reps.size()) return Threshold::infinite();
  return Threshold::at(levels[lo + 1]);
}

Threshold shadowing_modulus(const SystemMap& f, const Rational& epsilon,
                            const SearchLimits& limits) {
  if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
  return threshold_search(f, [&](const Rational& delta) {
    return decide_shadowing(f, epsilon, delta, limits).holds();
  });
}

}  // namespace shadowkit
