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

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace shadowkit {

/// Exact rational number. All distances, radii and thresholds use it.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Parses "p/q", "p" or a plain decimal ("0.25"). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (always with a denominator, reduced).
std::string format_rational(const Rational& value);

/// Half-open threshold: a property holds for every delta <= value.
/// An empty value means the property holds for every delta.
struct Threshold {
  std::optional<Rational> value;

  static Threshold infinite() { return {}; }
  static Threshold at(Rational v) { return {std::move(v)}; }

  bool is_infinite() const { return !value.has_value(); }
  /// "inf" or "p/q".
  std::string to_string() const;

  friend bool operator==(const Threshold&, const Threshold&) = default;
  /// Total order with infinity as the largest element.
  friend bool operator<(const Threshold& a, const Threshold& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value < *b.value;
  }
  friend bool operator<=(const Threshold& a, const Threshold& b) { return !(b < a); }
};

}  // namespace shadowkit
