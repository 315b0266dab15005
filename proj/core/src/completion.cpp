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
#include <algorithm>

#include "shadowkit/construct.hpp"
#include "shadowkit/errors.hpp"

namespace shadowkit {
namespace {

// Backtracking over g(x) for every free x, smallest domain first, trying
// f(x) and then the values nearest f(x). Assigning x = v prunes every other
// domain to values w with d(v, w) <= L * d(x, y).
class LipschitzCompletion {
 public:
  LipschitzCompletion(const SystemMap& base, const Rational& constant, std::size_t max_nodes)
      : base_(base), space_(*base.space()), n_(base.size()), max_nodes_(max_nodes) {
    allow_.resize(n_ * n_);
    for (Point x = 0; x < n_; ++x) {
      for (Point y = 0; y < n_; ++y) {
        allow_[x * n_ + y] = space_.levels_at_most(constant * space_.distance(x, y));
      }
    }
    order_.resize(n_);
    for (Point x = 0; x < n_; ++x) {
      auto& values = order_[x];
      values.resize(n_);
      for (Point w = 0; w < n_; ++w) values[w] = w;
      std::stable_sort(values.begin(), values.end(), [&](Point a, Point b) {
        return space_.level(base(x), a) < space_.level(base(x), b);
      });
    }
    assignment_.assign(n_, 0);
    assigned_.assign(n_, false);
  }

  std::optional<std::vector<Point>> solve(std::vector<PointSet> domains) {
    if (search(domains)) return assignment_;
    return std::nullopt;
  }

 private:
  bool search(const std::vector<PointSet>& domains) {
    std::optional<Point> pick;
    for (Point x = 0; x < n_; ++x) {
      if (assigned_[x]) continue;
      if (!pick || domains[x].size() < domains[*pick].size()) pick = x;
    }
    if (!pick) return true;
    const Point x = *pick;
    for (Point v : order_[x]) {
      if (!domains[x].contains(v)) continue;
      if (++nodes_ > max_nodes_) throw BudgetExceeded("Lipschitz completion search", max_nodes_);
      std::vector<PointSet> next = domains;
      next[x] = PointSet::single(v);
      bool alive = true;
      for (Point y = 0; y < n_ && alive; ++y) {
        if (y == x || assigned_[y]) continue;
        const std::uint32_t allowed = allow_[x * n_ + y];
        PointSet keep;
        next[y].for_each([&](Point w) {
          if (space_.level(v, w) < allowed) keep.insert(w);
        });
        next[y] = keep;
        alive = !keep.empty();
      }
      if (!alive) continue;
      assigned_[x] = true;
      assignment_[x] = v;
      if (search(next)) return true;
      assigned_[x] = false;
    }
    return false;
  }

  const SystemMap& base_;
  const FiniteMetricSpace& space_;
  std::size_t n_;
  std::size_t max_nodes_;
  std::size_t nodes_ = 0;
  std::vector<std::uint32_t> allow_;
  std::vector<std::vector<Point>> order_;
  std::vector<Point> assignment_;
  std::vector<bool> assigned_;
};

}  // namespace

std::optional<SystemMap> find_completion(const SystemMap& base,
                                         std::span<const std::pair<Point, Point>> fixed,
                                         const Rational& bound, const ContinuityClass& cls,
                                         const SearchLimits& limits) {
  const auto& space = *base.space();
  const std::size_t n = base.size();
  const std::uint32_t cutoff = space.levels_below(bound);
  std::vector<std::optional<Point>> pinned(n);
  for (const auto& [x, t] : fixed) {
    if (x >= n || t >= n) throw ValidationError("perturbation support leaves the space");
    if (pinned[x] && *pinned[x] != t) return std::nullopt;
    if (space.level(base(x), t) >= cutoff) return std::nullopt;
    pinned[x] = t;
  }
  if (cls.is_all()) {
    std::vector<Point> image(base.image().begin(), base.image().end());
    for (Point x = 0; x < n; ++x) {
      if (pinned[x]) image[x] = *pinned[x];
    }
    return SystemMap(base.space(), std::move(image));
  }

  require_graph_size(space);
  std::vector<PointSet> domains(n);
  for (Point x = 0; x < n; ++x) {
    domains[x] = pinned[x] ? PointSet::single(*pinned[x]) : space.ball_below_level(base(x), cutoff);
  }
  LipschitzCompletion solver(base, cls.lipschitz_constant(), limits.max_states);
  auto image = solver.solve(std::move(domains));
  if (!image) return std::nullopt;
  return SystemMap(base.space(), std::move(*image));
}

}  // namespace shadowkit
