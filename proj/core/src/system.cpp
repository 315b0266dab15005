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
#include "shadowkit/system.hpp"

#include <algorithm>
#include <numeric>

#include "shadowkit/errors.hpp"

namespace shadowkit {

SystemMap::SystemMap(SpacePtr space, std::vector<Point> image)
    : space_(std::move(space)), image_(std::move(image)) {
  if (!space_) throw ValidationError("map has no space");
  if (image_.size() != space_->size()) {
    throw ValidationError("map has " + std::to_string(image_.size()) + " entries for a space of " +
                          std::to_string(space_->size()) + " points");
  }
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] >= space_->size()) {
      throw ValidationError("map sends point " + std::to_string(i) + " to " +
                            std::to_string(image_[i]) + ", outside the space");
    }
  }
}

SystemMap SystemMap::identity(SpacePtr space) {
  std::vector<Point> image(space->size());
  std::iota(image.begin(), image.end(), Point{0});
  return SystemMap(std::move(space), std::move(image));
}

SystemMap SystemMap::with(Point x, Point y) const {
  SystemMap out = *this;
  if (y >= size()) throw ValidationError("redefinition leaves the space");
  out.image_.at(x) = y;
  return out;
}

PointSet SystemMap::image_of(PointSet s) const {
  PointSet out;
  s.for_each([&](Point p) { out.insert(image_[p]); });
  return out;
}

bool operator==(const SystemMap& a, const SystemMap& b) {
  if (a.image_ != b.image_) return false;
  return a.space_ == b.space_ || (a.space_ && b.space_ && *a.space_ == *b.space_);
}

NonautonomousSystem::NonautonomousSystem(std::vector<SystemMap> preperiod,
                                         std::vector<SystemMap> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw ValidationError("nonautonomous system needs a nonempty period");
  for (const auto& f : preperiod_) require_same_space(f.space(), period_.front().space());
  for (const auto& f : period_) require_same_space(f.space(), period_.front().space());
}

NonautonomousSystem NonautonomousSystem::constant(SystemMap f) {
  return NonautonomousSystem({}, {std::move(f)});
}

const SystemMap& NonautonomousSystem::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Window aligned_window(Window a, Window b) {
  return {std::max(a.preperiod, b.preperiod), std::lcm(a.period, b.period)};
}

Window window_of(const NonautonomousSystem& system) {
  return {system.preperiod().size(), system.period().size()};
}

ContinuityClass ContinuityClass::lipschitz(Rational constant) {
  if (constant < 0) throw ValidationError("Lipschitz constant must be nonnegative");
  ContinuityClass c;
  c.lipschitz_ = true;
  c.constant_ = std::move(constant);
  return c;
}

bool ContinuityClass::admits(const SystemMap& g) const {
  if (!lipschitz_) return true;
  const auto& space = *g.space();
  const std::size_t n = space.size();
  for (Point x = 0; x < n; ++x) {
    for (Point y = x + 1; y < n; ++y) {
      if (space.distance(g(x), g(y)) > constant_ * space.distance(x, y)) return false;
    }
  }
  return true;
}

std::string ContinuityClass::to_string() const {
  return lipschitz_ ? "lip:" + format_rational(constant_) : std::string("ALL");
}

Rational rho(const SystemMap& f, const SystemMap& g) {
  require_same_space(f.space(), g.space());
  const auto& space = *f.space();
  std::uint32_t best = 0;
  for (Point x = 0; x < f.size(); ++x) best = std::max(best, space.level(f(x), g(x)));
  return space.levels()[best];
}

Rational rho_seq(const NonautonomousSystem& f, const NonautonomousSystem& g) {
  require_same_space(f.space(), g.space());
  const Window w = aligned_window(window_of(f), window_of(g));
  Rational best = 0;
  for (std::size_t i = 0; i < w.length(); ++i) best = std::max(best, rho(f.at(i), g.at(i)));
  return best;
}

std::vector<Point> orbit(const SystemMap& f, Point x, std::size_t horizon) {
  std::vector<Point> out;
  out.reserve(horizon + 1);
  out.push_back(x);
  for (std::size_t i = 0; i < horizon; ++i) out.push_back(f(out.back()));
  return out;
}

std::vector<Point> orbit_nonaut(const NonautonomousSystem& f, Point x, std::size_t horizon) {
  std::vector<Point> out;
  out.reserve(horizon + 1);
  out.push_back(x);
  for (std::size_t i = 0; i < horizon; ++i) out.push_back(f.at(i)(out.back()));
  return out;
}

std::vector<Point> EventualOrbit::unroll(std::size_t count) const {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i < preperiod.size() ? preperiod[i]
                                       : period[(i - preperiod.size()) % period.size()]);
  }
  return out;
}

EventualOrbit eventual_orbit(const SystemMap& f, Point x) {
  std::vector<std::size_t> first_seen(f.size(), static_cast<std::size_t>(-1));
  std::vector<Point> path;
  Point p = x;
  while (first_seen[p] == static_cast<std::size_t>(-1)) {
    first_seen[p] = path.size();
    path.push_back(p);
    p = f(p);
  }
  const auto split = static_cast<std::ptrdiff_t>(first_seen[p]);
  return {std::vector<Point>(path.begin(), path.begin() + split),
          std::vector<Point>(path.begin() + split, path.end())};
}

}  // namespace shadowkit
