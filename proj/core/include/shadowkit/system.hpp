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
#include <span>
#include <string>
#include <vector>

#include "shadowkit/point_set.hpp"
#include "shadowkit/rational.hpp"
#include "shadowkit/space.hpp"

namespace shadowkit {

/// Self-map of a finite metric space, stored as an image table.
class SystemMap {
 public:
  /// Throws ValidationError if the table has the wrong length or leaves the space.
  SystemMap(SpacePtr space, std::vector<Point> image);
  static SystemMap identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return image_.size(); }
  Point operator()(Point x) const { return image_[x]; }
  std::span<const Point> image() const { return image_; }

  /// Copy of this map redefined at one point.
  SystemMap with(Point x, Point y) const;
  /// f(S) for a point set. Requires size() <= 64.
  PointSet image_of(PointSet s) const;

  friend bool operator==(const SystemMap& a, const SystemMap& b);

 private:
  SpacePtr space_;
  std::vector<Point> image_;
};

/// Eventually periodic sequence of maps f_0, f_1, ...
/// f_i = preperiod[i] for i < preperiod.size(), otherwise
/// period[(i - preperiod.size()) mod period.size()].
class NonautonomousSystem {
 public:
  NonautonomousSystem(std::vector<SystemMap> preperiod, std::vector<SystemMap> period);
  static NonautonomousSystem constant(SystemMap f);

  const SpacePtr& space() const { return period_.front().space(); }
  const std::vector<SystemMap>& preperiod() const { return preperiod_; }
  const std::vector<SystemMap>& period() const { return period_; }
  const SystemMap& at(std::size_t i) const;

  friend bool operator==(const NonautonomousSystem&, const NonautonomousSystem&) = default;

 private:
  std::vector<SystemMap> preperiod_;
  std::vector<SystemMap> period_;
};

/// Index window over which two eventually periodic sequences repeat together.
struct Window {
  std::size_t preperiod = 0;
  std::size_t period = 1;
  std::size_t length() const { return preperiod + period; }
};

/// max of preperiods, lcm of periods.
Window aligned_window(Window a, Window b);
Window window_of(const NonautonomousSystem& system);

/// Admissible maps: every map (ALL) or L-Lipschitz maps.
class ContinuityClass {
 public:
  static ContinuityClass all() { return ContinuityClass{}; }
  static ContinuityClass lipschitz(Rational constant);

  bool is_all() const { return !lipschitz_; }
  const Rational& lipschitz_constant() const { return constant_; }
  bool admits(const SystemMap& g) const;
  /// "ALL" or "lip:p/q".
  std::string to_string() const;

  friend bool operator==(const ContinuityClass&, const ContinuityClass&) = default;

 private:
  bool lipschitz_ = false;
  Rational constant_{0};
};

/// Supremum distance max_x d(f(x), g(x)).
Rational rho(const SystemMap& f, const SystemMap& g);
/// sup_i rho(f_i, g_i), attained on the aligned window.
Rational rho_seq(const NonautonomousSystem& f, const NonautonomousSystem& g);

/// (x, f(x), ..., f^horizon(x)).
std::vector<Point> orbit(const SystemMap& f, Point x, std::size_t horizon);
/// (x, f_0(x), f_1(f_0(x)), ...), horizon + 1 points.
std::vector<Point> orbit_nonaut(const NonautonomousSystem& f, Point x, std::size_t horizon);

/// Orbit of x split at its first repeated point: x_0..x_{k-1}, then a cycle.
struct EventualOrbit {
  std::vector<Point> preperiod;
  std::vector<Point> period;

  /// First count points of the orbit.
  std::vector<Point> unroll(std::size_t count) const;
};
EventualOrbit eventual_orbit(const SystemMap& f, Point x);

}  // namespace shadowkit
