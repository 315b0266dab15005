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

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace shadowkit {

using Point = std::uint32_t;

/// Maximum number of points supported by the graph and survivor algorithms.
inline constexpr std::size_t kMaxGraphPoints = 64;

/// Subset of the points of a space with at most 64 points.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr PointSet single(Point p) { return PointSet{std::uint64_t{1} << p}; }
  static constexpr PointSet first(std::size_t n) {
    return PointSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Point p) const { return (bits_ >> p) & 1u; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr void insert(Point p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(Point p) { bits_ &= ~(std::uint64_t{1} << p); }

  constexpr PointSet operator&(PointSet o) const { return PointSet{bits_ & o.bits_}; }
  constexpr PointSet operator|(PointSet o) const { return PointSet{bits_ | o.bits_}; }
  constexpr PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  constexpr bool is_subset_of(PointSet o) const { return (bits_ & ~o.bits_) == 0; }
  friend constexpr bool operator==(PointSet, PointSet) = default;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      fn(static_cast<Point>(std::countr_zero(b)));
    }
  }

  std::vector<Point> to_vector() const {
    std::vector<Point> out;
    out.reserve(size());
    for_each([&](Point p) { out.push_back(p); });
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace shadowkit

template <>
struct std::hash<shadowkit::PointSet> {
  std::size_t operator()(shadowkit::PointSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
