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
#include "shadowkit/space.hpp"

#include <algorithm>

#include "shadowkit/errors.hpp"

namespace shadowkit {
namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::optional<MetricViolation> validate_space(const std::vector<std::string>& labels,
                                              const DistanceMatrix& dist) {
  using Kind = MetricViolation::Kind;
  const std::size_t n = labels.size();
  if (n == 0) return MetricViolation{Kind::kShape, {}, "space has no points"};
  if (dist.size() != n) {
    return MetricViolation{Kind::kShape, {},
                           "distance matrix has " + std::to_string(dist.size()) + " rows for " +
                               std::to_string(n) + " labels"};
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      return MetricViolation{Kind::kShape, {static_cast<Point>(i)},
                             "row " + std::to_string(i) + " has " + std::to_string(dist[i].size()) +
                                 " entries, expected " + std::to_string(n)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0) {
      return MetricViolation{Kind::kDiagonal, {static_cast<Point>(i)},
                             "d" + pair_text(i, i) + " = " + format_rational(dist[i][i]) + " is not 0"};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dist[i][j] <= 0) {
        return MetricViolation{Kind::kNonPositive, {static_cast<Point>(i), static_cast<Point>(j)},
                               "d" + pair_text(i, j) + " = " + format_rational(dist[i][j]) +
                                   " must be positive"};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        return MetricViolation{Kind::kAsymmetric, {static_cast<Point>(i), static_cast<Point>(j)},
                               "symmetry violated at " + pair_text(i, j) + ": " +
                                   format_rational(dist[i][j]) + " vs " + format_rational(dist[j][i])};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          return MetricViolation{
              Kind::kTriangle,
              {static_cast<Point>(i), static_cast<Point>(j), static_cast<Point>(k)},
              "triangle inequality violated at (" + std::to_string(i) + "," + std::to_string(j) +
                  "," + std::to_string(k) + "): " + format_rational(dist[i][k]) + " > " +
                  format_rational(dist[i][j]) + " + " + format_rational(dist[j][k])};
        }
      }
    }
  }
  return std::nullopt;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix dist)
    : labels_(std::move(labels)) {
  if (auto violation = validate_space(labels_, dist)) throw ValidationError(violation->message);
  const std::size_t n = labels_.size();
  dist_.reserve(n * n);
  for (auto& row : dist) {
    for (auto& d : row) dist_.push_back(std::move(d));
  }
  levels_ = dist_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  level_.resize(dist_.size());
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    level_[i] = static_cast<std::uint32_t>(
        std::lower_bound(levels_.begin(), levels_.end(), dist_[i]) - levels_.begin());
  }
}

std::optional<Point> FiniteMetricSpace::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Point>(i);
  }
  return std::nullopt;
}

DistanceMatrix FiniteMetricSpace::matrix() const {
  const std::size_t n = size();
  DistanceMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = dist_[i * n + j];
  }
  return out;
}

std::uint32_t FiniteMetricSpace::levels_below(const Rational& r) const {
  return static_cast<std::uint32_t>(std::lower_bound(levels_.begin(), levels_.end(), r) -
                                    levels_.begin());
}

std::uint32_t FiniteMetricSpace::levels_at_most(const Rational& r) const {
  return static_cast<std::uint32_t>(std::upper_bound(levels_.begin(), levels_.end(), r) -
                                    levels_.begin());
}

std::optional<Rational> FiniteMetricSpace::min_positive_distance() const {
  if (levels_.size() < 2) return std::nullopt;
  return levels_[1];
}

PointSet FiniteMetricSpace::ball(Point center, const Rational& radius) const {
  return ball_below_level(center, levels_below(radius));
}

PointSet FiniteMetricSpace::ball_below_level(Point center, std::uint32_t cutoff) const {
  require_graph_size(*this);
  PointSet out;
  const std::size_t n = size();
  for (std::size_t y = 0; y < n; ++y) {
    if (level_[center * n + y] < cutoff) out.insert(static_cast<Point>(y));
  }
  return out;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw SpaceMismatch();
}

void require_graph_size(const FiniteMetricSpace& space) {
  if (space.size() > kMaxGraphPoints) {
    throw PreconditionError("space has " + std::to_string(space.size()) +
                            " points; bitset algorithms support at most " +
                            std::to_string(kMaxGraphPoints));
  }
}

}  // namespace shadowkit
