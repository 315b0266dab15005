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
#include "shadowkit/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <limits>
#include <set>

#include "shadowkit/errors.hpp"

namespace shadowkit {
namespace {

using boost::multiprecision::cpp_int;

struct FamilyDef {
  ZooFamilyInfo info;
  std::vector<std::string> keys;
};

const std::vector<FamilyDef>& families() {
  static const std::vector<FamilyDef> defs = {
      {{"tent", "m", "tent map min(2x, 2-2x) on an m-point grid of [0,1]"}, {"m"}},
      {{"logistic", "lambda,m", "logistic map lambda x (1-x) on an m-point grid"}, {"lambda", "m"}},
      {{"affine", "a,b,m", "affine map a x + b on an m-point grid"}, {"a", "b", "m"}},
      {{"rotation", "m,k", "rotation by k steps of m equally spaced circle points"}, {"m", "k"}},
      {{"shift", "s,p", "shift on periodic words of period <= p over s letters"}, {"s", "p"}},
      {{"random", "n,seed", "random metric and map on n points"}, {"n", "seed"}},
  };
  return defs;
}

const FamilyDef& family_def(const std::string& name) {
  for (const auto& def : families()) {
    if (def.info.name == name) return def;
  }
  throw ValidationError("unknown zoo family '" + name + "'");
}

std::size_t natural(const ZooSpec& spec, const std::string& key, std::size_t min,
                    std::size_t max) {
  const std::string& text = spec.params.at(key);
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ValidationError(spec.family + ": parameter " + key + " must be a natural number, got '" +
                          text + "'");
  }
  if (value < min || value > max) {
    throw ValidationError(spec.family + ": parameter " + key + " must lie in [" +
                          std::to_string(min) + ", " + std::to_string(max) + "]");
  }
  return value;
}

Rational rational(const ZooSpec& spec, const std::string& key) {
  try {
    return parse_rational(spec.params.at(key));
  } catch (const std::invalid_argument&) {
    throw ValidationError(spec.family + ": parameter " + key + " must be a rational, got '" +
                          spec.params.at(key) + "'");
  }
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

Point nearest_grid_point(const Rational& value, std::size_t m) {
  const Rational scaled = value * static_cast<long long>(m - 1);
  const cpp_int whole = numerator(scaled) / denominator(scaled);
  const Rational frac = scaled - Rational(whole);
  cpp_int index = frac > Rational(1, 2) ? whole + 1 : whole;
  return static_cast<Point>(index);
}

template <typename Map>
SystemMap interval_map(const ZooSpec& spec, std::size_t m, Map&& map) {
  DistanceMatrix dist(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      dist[i][j] = Rational(static_cast<long long>(i > j ? i - j : j - i),
                            static_cast<long long>(m - 1));
    }
  }
  std::vector<Point> image(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational x(static_cast<long long>(i), static_cast<long long>(m - 1));
    const Rational y = map(x);
    if (y < 0 || y > 1) {
      throw ValidationError(spec.family + ": image of " + format_rational(x) + " is " +
                            format_rational(y) + ", outside [0,1]");
    }
    image[i] = nearest_grid_point(y, m);
  }
  return SystemMap(make_space(index_labels(m), std::move(dist)), std::move(image));
}

SystemMap rotation(std::size_t m, std::size_t k) {
  DistanceMatrix dist(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      dist[i][j] = Rational(static_cast<long long>(std::min(gap, m - gap)),
                            static_cast<long long>(m));
    }
  }
  std::vector<Point> image(m);
  for (std::size_t i = 0; i < m; ++i) image[i] = static_cast<Point>((i + k) % m);
  return SystemMap(make_space(index_labels(m), std::move(dist)), std::move(image));
}

bool primitive(const std::string& word) {
  for (std::size_t d = 1; d < word.size(); ++d) {
    if (word.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < word.size() && repeats; ++i) repeats = word[i] == word[i - d];
    if (repeats) return false;
  }
  return true;
}

SystemMap shift(std::size_t s, std::size_t p) {
  std::vector<std::string> words;
  for (std::size_t len = 1; len <= p; ++len) {
    std::string word(len, '0');
    for (;;) {
      if (primitive(word)) words.push_back(word);
      std::size_t pos = len;
      while (pos > 0 && word[pos - 1] == static_cast<char>('0' + s - 1)) word[--pos] = '0';
      if (pos == 0) break;
      ++word[pos - 1];
    }
  }
  const std::size_t n = words.size();
  if (n > kMaxGraphPoints) {
    throw ValidationError("shift: " + std::to_string(n) + " periodic words exceed " +
                          std::to_string(kMaxGraphPoints) + " points");
  }
  DistanceMatrix dist(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const std::size_t la = words[a].size();
      const std::size_t lb = words[b].size();
      const std::size_t span = std::lcm(la, lb);
      std::size_t k = 0;
      while (k < span && words[a][k % la] == words[b][k % lb]) ++k;
      dist[a][b] = Rational(1, cpp_int(1) << k);
    }
  }
  std::vector<Point> image(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string rotated = words[a].substr(1) + words[a].front();
    image[a] = static_cast<Point>(std::find(words.begin(), words.end(), rotated) - words.begin());
  }
  return SystemMap(make_space(words, std::move(dist)), std::move(image));
}

SystemMap random_system(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = 1 + static_cast<long long>(rng() % 10);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], w[i][k] + w[k][j]);
    }
  }
  DistanceMatrix dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = Rational(w[i][j], 10);
  }
  std::vector<Point> image(n);
  for (auto& y : image) y = static_cast<Point>(rng() % n);
  return SystemMap(make_space(index_labels(n), std::move(dist)), std::move(image));
}

}  // namespace

std::string ZooSpec::to_string() const {
  std::string out = family + ':';
  bool first = true;
  for (const auto& key : family_def(family).keys) {
    auto it = params.find(key);
    if (it == params.end()) continue;
    out += (first ? "" : ",") + key + '=' + it->second;
    first = false;
  }
  return out;
}

ZooSpec parse_zoo_spec(std::string_view text) {
  ZooSpec spec;
  const auto colon = text.find(':');
  spec.family = std::string(text.substr(0, colon));
  const FamilyDef& def = family_def(spec.family);
  std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? "" : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ValidationError(spec.family + ": expected key=value, got '" + std::string(item) + "'");
    }
    std::string key(item.substr(0, eq));
    if (std::find(def.keys.begin(), def.keys.end(), key) == def.keys.end()) {
      throw ValidationError(spec.family + ": unknown parameter '" + key + "'");
    }
    if (!spec.params.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw ValidationError(spec.family + ": parameter '" + key + "' given twice");
    }
  }
  for (const auto& key : def.keys) {
    if (!spec.params.contains(key)) {
      throw ValidationError(spec.family + ": missing parameter '" + key + "'");
    }
  }
  return spec;
}

SystemMap build_zoo(const ZooSpec& spec) {
  family_def(spec.family);
  const auto& f = spec.family;
  if (f == "tent") {
    return interval_map(spec, natural(spec, "m", 2, kMaxGraphPoints), [](const Rational& x) {
      return std::min(x * 2, 2 - x * 2);
    });
  }
  if (f == "logistic") {
    const Rational lambda = rational(spec, "lambda");
    if (lambda < 0 || lambda > 4) throw ValidationError("logistic: lambda must lie in [0, 4]");
    return interval_map(spec, natural(spec, "m", 2, kMaxGraphPoints),
                        [&](const Rational& x) { return lambda * x * (1 - x); });
  }
  if (f == "affine") {
    const Rational a = rational(spec, "a");
    const Rational b = rational(spec, "b");
    return interval_map(spec, natural(spec, "m", 2, kMaxGraphPoints),
                        [&](const Rational& x) { return a * x + b; });
  }
  if (f == "rotation") {
    const std::size_t m = natural(spec, "m", 1, kMaxGraphPoints);
    return rotation(m, natural(spec, "k", 0, m));
  }
  if (f == "shift") {
    return shift(natural(spec, "s", 1, 10), natural(spec, "p", 1, kMaxGraphPoints));
  }
  return random_system(natural(spec, "n", 1, kMaxGraphPoints),
                       natural(spec, "seed", 0, std::numeric_limits<std::uint64_t>::max()));
}

SystemMap build_zoo(std::string_view text) { return build_zoo(parse_zoo_spec(text)); }

std::vector<ZooFamilyInfo> list_zoo_families() {
  std::vector<ZooFamilyInfo> out;
  for (const auto& def : families()) out.push_back(def.info);
  return out;
}

std::vector<std::pair<std::string, SystemMap>> expand_zoo_family(std::string_view text) {
  std::vector<std::string> specs = {std::string(text)};
  for (;;) {
    std::vector<std::string> next;
    bool expanded = false;
    for (const auto& s : specs) {
      const auto dots = s.find("..");
      if (dots == std::string::npos) {
        next.push_back(s);
        continue;
      }
      expanded = true;
      const auto begin = s.find_last_of("=", dots) + 1;
      auto end = s.find(',', dots);
      if (end == std::string::npos) end = s.size();
      std::size_t lo = 0;
      std::size_t hi = 0;
      const std::string lo_text = s.substr(begin, dots - begin);
      const std::string hi_text = s.substr(dots + 2, end - dots - 2);
      auto r1 = std::from_chars(lo_text.data(), lo_text.data() + lo_text.size(), lo);
      auto r2 = std::from_chars(hi_text.data(), hi_text.data() + hi_text.size(), hi);
      if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
          r1.ptr != lo_text.data() + lo_text.size() || r2.ptr != hi_text.data() + hi_text.size() ||
          lo > hi) {
        throw ValidationError("malformed range '" + s.substr(begin, end - begin) + "'");
      }
      for (std::size_t v = lo; v <= hi; ++v) {
        next.push_back(s.substr(0, begin) + std::to_string(v) + s.substr(end));
      }
    }
    specs = std::move(next);
    if (!expanded) break;
  }
  std::vector<std::pair<std::string, SystemMap>> out;
  for (const auto& s : specs) {
    ZooSpec spec = parse_zoo_spec(s);
    out.emplace_back(spec.to_string(), build_zoo(spec));
  }
  return out;
}

}  // namespace shadowkit
