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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowkit/point_set.hpp"
#include "shadowkit/rational.hpp"

namespace shadowkit {

using DistanceMatrix = std::vector<std::vector<Rational>>;

/// First metric-axiom violation found in a distance matrix.
struct MetricViolation {
  enum class Kind { kShape, kDiagonal, kNonPositive, kAsymmetric, kTriangle };
  Kind kind;
  /// Offending indices: (i) for diagonal, (i,j) for positivity/symmetry,
  /// (i,j,k) for the triangle d(i,k) > d(i,j) + d(j,k).
  std::vector<Point> points;
  std::string message;
};

/// Checks shape, zero diagonal, positivity, symmetry and the triangle
/// inequality in that order; reports the lexicographically first violation.
std::optional<MetricViolation> validate_space(const std::vector<std::string>& labels,
                                              const DistanceMatrix& dist);

/// Finite metric space with exact distances.
///
/// Distinct distance values are ranked once at construction so that the
/// hot loops compare small integers instead of rationals: d(a,b) < r holds
/// exactly when level(a,b) < levels_below(r).
class FiniteMetricSpace {
 public:
  /// Throws ValidationError carrying the validate_space report.
  FiniteMetricSpace(std::vector<std::string> labels, DistanceMatrix dist);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Point p) const { return labels_.at(p); }
  std::optional<Point> find(std::string_view label) const;

  const Rational& distance(Point a, Point b) const { return dist_[a * size() + b]; }
  DistanceMatrix matrix() const;

  /// Sorted distinct distance values (the first is always 0).
  const std::vector<Rational>& levels() const { return levels_; }
  std::uint32_t level(Point a, Point b) const { return level_[a * size() + b]; }
  /// Number of distinct distance values strictly below r.
  std::uint32_t levels_below(const Rational& r) const;
  /// Number of distinct distance values at most r.
  std::uint32_t levels_at_most(const Rational& r) const;

  const Rational& diameter() const { return levels_.back(); }
  /// Smallest positive distance, or nullopt for a one-point space.
  std::optional<Rational> min_positive_distance() const;

  /// Open ball {y : d(center, y) < radius}. Requires size() <= 64.
  PointSet ball(Point center, const Rational& radius) const;
  /// Ball expressed with a precomputed cutoff from levels_below().
  PointSet ball_below_level(Point center, std::uint32_t cutoff) const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> dist_;
  std::vector<Rational> levels_;
  std::vector<std::uint32_t> level_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr make_space(std::vector<std::string> labels, DistanceMatrix dist) {
  return std::make_shared<const FiniteMetricSpace>(std::move(labels), std::move(dist));
}

/// Throws SpaceMismatch unless both pointers denote the same metric space.
void require_same_space(const SpacePtr& a, const SpacePtr& b);

/// Throws PreconditionError when the space is too large for bitset algorithms.
void require_graph_size(const FiniteMetricSpace& space);

}  // namespace shadowkit
