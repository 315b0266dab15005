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

#include "shadowkit/document.hpp"

#include <fstream>
#include <sstream>

#include <boost/multiprecision/integer.hpp>
#include <json.hpp>

namespace shadowkit {
namespace {

using nlohmann::json;
using boost::multiprecision::cpp_int;

std::string index_path(const std::string& base, std::size_t i) {
  return base + '[' + std::to_string(i) + ']';
}

std::string field_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + '.' + key;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw DocumentError("line " + std::to_string(line) + ", column " + std::to_string(column),
                        "malformed JSON");
  }
}

const json& require(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) throw DocumentError(path.empty() ? "document" : path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw DocumentError(field_path(path, key), "missing field");
  return *it;
}

const json& require_array(const json& value, const std::string& path) {
  if (!value.is_array()) throw DocumentError(path, "expected an array");
  return value;
}

Rational read_rational(const json& value, const std::string& path) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(cpp_int(value.get<std::uint64_t>()))
                                      : Rational(value.get<std::int64_t>());
  }
  if (value.is_number_float()) {
    throw DocumentError(path, "floating-point number; write exact values as \"p/q\" strings");
  }
  if (!value.is_string()) throw DocumentError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw DocumentError(path, "cannot parse rational '" + value.get<std::string>() + "'");
  }
}

std::size_t read_index(const json& value, std::size_t bound, const std::string& path) {
  if (!value.is_number_unsigned()) throw DocumentError(path, "expected a point index");
  const auto index = value.get<std::uint64_t>();
  if (index >= bound) {
    throw DocumentError(path, "index " + std::to_string(index) + " outside a space of " +
                                  std::to_string(bound) + " points");
  }
  return static_cast<std::size_t>(index);
}

/// Points in pseudo-orbit and witness files are labels or indices.
Point read_point(const json& value, const FiniteMetricSpace& space, const std::string& path) {
  if (value.is_string()) {
    if (auto p = space.find(value.get<std::string>())) return *p;
    throw DocumentError(path, "unknown label '" + value.get<std::string>() + "'");
  }
  return static_cast<Point>(read_index(value, space.size(), path));
}

std::vector<Point> read_points(const json& value, const FiniteMetricSpace& space,
                               const std::string& path) {
  require_array(value, path);
  std::vector<Point> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_point(value[i], space, index_path(path, i)));
  }
  return out;
}

json labels_of(std::span<const Point> points, const FiniteMetricSpace& space) {
  json out = json::array();
  for (Point p : points) out.push_back(space.label(p));
  return out;
}

json labels_of(PointSet set, const FiniteMetricSpace& space) {
  json out = json::array();
  set.for_each([&](Point p) { out.push_back(space.label(p)); });
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  const cpp_int num = numerator(value);
  const cpp_int den = denominator(value);
  const cpp_int rn = boost::multiprecision::sqrt(num);
  const cpp_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

DistanceMatrix embedded_metric(const json& embedded, std::size_t n, const std::string& path) {
  const json& coords = require_array(require(embedded, "coords", path), field_path(path, "coords"));
  const json& norm_value = require(embedded, "norm", path);
  const std::string norm_path = field_path(path, "norm");
  if (!norm_value.is_string()) throw DocumentError(norm_path, "expected a string");
  const std::string norm = norm_value.get<std::string>();
  if (norm != "L1" && norm != "L2" && norm != "Linf" && norm != "circle") {
    throw DocumentError(norm_path, "unknown norm '" + norm + "' (L1, L2, Linf or circle)");
  }
  if (coords.size() != n) {
    throw DocumentError(field_path(path, "coords"),
                        "has " + std::to_string(coords.size()) + " entries for " +
                            std::to_string(n) + " labels");
  }
  std::vector<std::vector<Rational>> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = index_path(field_path(path, "coords"), i);
    if (coords[i].is_array()) {
      for (std::size_t k = 0; k < coords[i].size(); ++k) {
        points[i].push_back(read_rational(coords[i][k], index_path(p, k)));
      }
    } else {
      points[i].push_back(read_rational(coords[i], p));
    }
    if (points[i].size() != points[0].size() || points[i].empty()) {
      throw DocumentError(p, "coordinate dimension differs from the first point");
    }
    if (norm == "circle") {
      if (points[i].size() != 1) throw DocumentError(p, "circle coordinates are scalars");
      if (points[i][0] < 0 || points[i][0] >= 1) throw DocumentError(p, "circle coordinate outside [0,1)");
    }
  }
  DistanceMatrix dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational sum = 0;
      Rational top = 0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        Rational diff = abs(points[i][k] - points[j][k]);
        if (norm == "circle") diff = std::min(diff, 1 - diff);
        sum += norm == "L2" ? diff * diff : diff;
        top = std::max(top, diff);
      }
      if (norm == "Linf") {
        dist[i][j] = top;
      } else if (norm == "L2") {
        auto root = exact_sqrt(sum);
        if (!root) {
          throw DocumentError(field_path(path, "coords"),
                              "L2 distance between points " + std::to_string(i) + " and " +
                                  std::to_string(j) + " is irrational");
        }
        dist[i][j] = *root;
      } else {
        dist[i][j] = sum;
      }
    }
  }
  return dist;
}

SystemMap read_map(const json& value, const SpacePtr& space, const std::string& path) {
  require_array(value, path);
  if (value.size() != space->size()) {
    throw DocumentError(path, "has " + std::to_string(value.size()) + " entries for " +
                                  std::to_string(space->size()) + " points");
  }
  std::vector<Point> image;
  for (std::size_t i = 0; i < value.size(); ++i) {
    image.push_back(static_cast<Point>(read_index(value[i], space->size(), index_path(path, i))));
  }
  return SystemMap(space, std::move(image));
}

std::vector<SystemMap> read_maps(const json& value, const SpacePtr& space, const std::string& path) {
  require_array(value, path);
  std::vector<SystemMap> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(read_map(value[i], space, index_path(path, i)));
  return out;
}

json image_json(const SystemMap& f) {
  json out = json::array();
  for (Point y : f.image()) out.push_back(y);
  return out;
}

json class_json(const ContinuityClass& cls) {
  if (cls.is_all()) return "ALL";
  return json{{"lipschitz", format_rational(cls.lipschitz_constant())}};
}

json system_json(const FiniteMetricSpace& space,
                 const std::variant<SystemMap, NonautonomousSystem>& dynamics,
                 const std::optional<ContinuityClass>& cls) {
  json doc;
  doc["labels"] = space.labels();
  json matrix = json::array();
  for (Point i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (Point j = 0; j < space.size(); ++j) row.push_back(format_rational(space.distance(i, j)));
    matrix.push_back(std::move(row));
  }
  doc["metric"] = {{"matrix", std::move(matrix)}};
  if (const auto* f = std::get_if<SystemMap>(&dynamics)) {
    doc["map"] = image_json(*f);
  } else {
    const auto& seq = std::get<NonautonomousSystem>(dynamics);
    json pre = json::array();
    json per = json::array();
    for (const auto& g : seq.preperiod()) pre.push_back(image_json(g));
    for (const auto& g : seq.period()) per.push_back(image_json(g));
    doc["maps"] = {{"preperiod", std::move(pre)}, {"period", std::move(per)}};
  }
  if (cls) doc["class"] = class_json(*cls);
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + '\n'; }

std::string threshold_cell(const Threshold& t) { return t.to_string(); }

}  // namespace

const SystemMap& SystemDocument::map() const {
  if (!is_autonomous()) throw ValidationError("this operation needs a single map, got a map sequence");
  return std::get<SystemMap>(dynamics);
}

NonautonomousSystem SystemDocument::sequence() const {
  if (is_autonomous()) return NonautonomousSystem::constant(std::get<SystemMap>(dynamics));
  return std::get<NonautonomousSystem>(dynamics);
}

SystemDocument parse_system(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw DocumentError("document", "expected a JSON object");

  const json& labels_value = require_array(require(doc, "labels", ""), "labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < labels_value.size(); ++i) {
    if (!labels_value[i].is_string()) throw DocumentError(index_path("labels", i), "expected a string");
    labels.push_back(labels_value[i].get<std::string>());
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) throw DocumentError(index_path("labels", i), "duplicate label '" + labels[i] + "'");
    }
  }
  if (labels.empty()) throw DocumentError("labels", "a space needs at least one point");
  const std::size_t n = labels.size();

  const json& metric = require(doc, "metric", "");
  DistanceMatrix dist;
  if (metric.is_object() && metric.contains("matrix")) {
    const json& rows = require_array(metric["matrix"], "metric.matrix");
    if (rows.size() != n) {
      throw DocumentError("metric.matrix", "has " + std::to_string(rows.size()) + " rows for " +
                                               std::to_string(n) + " labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::string row_path = index_path("metric.matrix", i);
      require_array(rows[i], row_path);
      if (rows[i].size() != n) {
        throw DocumentError(row_path, "has " + std::to_string(rows[i].size()) + " entries for " +
                                          std::to_string(n) + " labels");
      }
      dist.emplace_back();
      for (std::size_t j = 0; j < n; ++j) dist.back().push_back(read_rational(rows[i][j], index_path(row_path, j)));
    }
  } else if (metric.is_object() && metric.contains("embedded")) {
    dist = embedded_metric(metric["embedded"], n, "metric.embedded");
  } else {
    throw DocumentError("metric", "expected {\"matrix\": ...} or {\"embedded\": ...}");
  }
  if (auto violation = validate_space(labels, dist)) {
    std::string where = "metric";
    if (violation->points.size() >= 2) {
      // A triangle violation (i, j, k) is blamed on the long side d(i, k).
      const Point far = violation->kind == MetricViolation::Kind::kTriangle ? violation->points[2]
                                                                             : violation->points[1];
      where = "metric.matrix[" + std::to_string(violation->points[0]) + "][" +
              std::to_string(far) + "]";
    }
    throw DocumentError(where, violation->message);
  }
  SpacePtr space = make_space(labels, std::move(dist));

  const bool has_map = doc.contains("map");
  const bool has_maps = doc.contains("maps");
  if (has_map == has_maps) throw DocumentError("map", "exactly one of \"map\" and \"maps\" is required");
  SystemDocument out{space, SystemMap::identity(space), std::nullopt};
  if (has_map) {
    out.dynamics = read_map(doc["map"], space, "map");
  } else {
    const json& maps = doc["maps"];
    auto pre = maps.contains("preperiod") ? read_maps(maps["preperiod"], space, "maps.preperiod")
                                          : std::vector<SystemMap>{};
    auto per = read_maps(require(maps, "period", "maps"), space, "maps.period");
    if (per.empty()) throw DocumentError("maps.period", "needs at least one map");
    out.dynamics = NonautonomousSystem(std::move(pre), std::move(per));
  }

  if (doc.contains("class")) {
    const json& cls = doc["class"];
    if (cls.is_string() && cls.get<std::string>() == "ALL") {
      out.cls = ContinuityClass::all();
    } else if (cls.is_object() && cls.contains("lipschitz")) {
      Rational constant = read_rational(cls["lipschitz"], "class.lipschitz");
      if (constant <= 0) throw DocumentError("class.lipschitz", "must be positive");
      out.cls = ContinuityClass::lipschitz(constant);
    } else {
      throw DocumentError("class", "expected \"ALL\" or {\"lipschitz\": \"p/q\"}");
    }
  }
  return out;
}

SystemDocument load_system(const std::filesystem::path& path) {
  try {
    return parse_system(read_file(path));
  } catch (const DocumentError& e) {
    throw DocumentError(path.string() + ": " + e.where(),
                        std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string system_to_json(const SystemDocument& doc) {
  return dump(system_json(*doc.space, doc.dynamics, doc.cls));
}

SystemDocument make_document(const SystemMap& f, std::optional<ContinuityClass> cls) {
  return SystemDocument{f.space(), f, std::move(cls)};
}

std::string witness_to_json(const WitnessDocument& witness, const FiniteMetricSpace& space) {
  json doc;
  doc["property"] = witness.property;
  doc["epsilon"] = format_rational(witness.epsilon);
  doc["delta"] = format_rational(witness.delta);
  doc["prefix"] = labels_of(std::span<const Point>(witness.prefix), space);
  json trace = json::array();
  for (PointSet s : witness.survivor_trace) trace.push_back(labels_of(s, space));
  doc["survivor_trace"] = std::move(trace);
  if (witness.generator) doc["generator"] = image_json(*witness.generator);
  return dump(doc);
}

WitnessDocument parse_witness(std::string_view text, const SpacePtr& space) {
  const json doc = parse_json(text);
  WitnessDocument out;
  if (doc.contains("property")) {
    if (!doc["property"].is_string()) throw DocumentError("property", "expected a string");
    out.property = doc["property"].get<std::string>();
  }
  out.epsilon = read_rational(require(doc, "epsilon", ""), "epsilon");
  out.delta = read_rational(require(doc, "delta", ""), "delta");
  out.prefix = read_points(require(doc, "prefix", ""), *space, "prefix");
  const json& trace = require_array(require(doc, "survivor_trace", ""), "survivor_trace");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    PointSet set;
    for (Point p : read_points(trace[i], *space, index_path("survivor_trace", i))) set.insert(p);
    out.survivor_trace.push_back(set);
  }
  if (doc.contains("generator")) out.generator = read_map(doc["generator"], space, "generator");
  return out;
}

PseudoOrbit parse_pseudo_orbit(std::string_view text, const SpacePtr& space) {
  const json doc = parse_json(text);
  const Rational delta = read_rational(require(doc, "delta", ""), "delta");
  if (delta <= 0) throw DocumentError("delta", "must be positive");
  if (doc.contains("prefix")) return PseudoOrbit::finite(read_points(doc["prefix"], *space, "prefix"), delta);
  if (doc.contains("points")) return PseudoOrbit::finite(read_points(doc["points"], *space, "points"), delta);
  auto pre = doc.contains("preperiod") ? read_points(doc["preperiod"], *space, "preperiod")
                                       : std::vector<Point>{};
  auto per = read_points(require(doc, "period", ""), *space, "period");
  if (per.empty()) throw DocumentError("period", "needs at least one point");
  return PseudoOrbit::eventually_periodic(std::move(pre), std::move(per), delta);
}

std::string pseudo_orbit_to_json(const PseudoOrbit& xs, const FiniteMetricSpace& space) {
  json doc;
  doc["delta"] = format_rational(xs.delta);
  if (xs.is_finite()) {
    doc["points"] = labels_of(std::span<const Point>(xs.preperiod), space);
  } else {
    doc["preperiod"] = labels_of(std::span<const Point>(xs.preperiod), space);
    doc["period"] = labels_of(std::span<const Point>(xs.period), space);
  }
  return dump(doc);
}

std::string realization_to_json(const RealizationResult& result) {
  const FiniteMetricSpace& space =
      result.is_autonomous() ? *result.map().space() : *result.sequence().space();
  json doc = system_json(space, result.system, std::nullopt);
  doc["start"] = space.label(result.start);
  doc["rho_bound"] = format_rational(result.rho_bound);
  return dump(doc);
}

std::string modulus_to_csv(const ModulusTable& table) {
  std::ostringstream out;
  out << "# class=" << table.cls.to_string() << " seed=" << table.seed
      << " usc=" << (table.usc_exhaustive ? "exhaustive" : "sampled")
      << " usc_samples=" << table.usc_samples << '\n';
  out << "epsilon,delta_shadow,delta_struct,delta_fg,delta_cg,delta_usc\n";
  for (const auto& row : table.rows) {
    out << format_rational(row.epsilon) << ',' << threshold_cell(row.shadow) << ','
        << threshold_cell(row.structural) << ',' << threshold_cell(row.functional) << ','
        << threshold_cell(row.continuous) << ',' << threshold_cell(row.usc) << '\n';
  }
  return out.str();
}

std::string equivalence_to_json(const EquivalenceReport& report) {
  json doc;
  doc["class"] = report.cls.to_string();
  doc["checks_total"] = report.checks.size();
  doc["violations"] = report.violations();
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry{{"name", c.name},
               {"epsilon", format_rational(c.epsilon)},
               {"delta", format_rational(c.delta)},
               {"lhs", c.lhs},
               {"rhs", c.rhs},
               {"kind", c.equality ? "equality" : "implication"},
               {"passed", c.passed()}};
    if (!c.detail.empty()) entry["witness"] = c.detail;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return dump(doc);
}

std::string separation_to_json(const SeparationReport& report) {
  json doc;
  doc["class"] = report.cls.to_string();
  doc["budget"] = report.budget;
  doc["systems_examined"] = report.systems_examined;
  doc["pairs_examined"] = report.pairs_examined;
  doc["budget_exhausted"] = report.budget_exhausted;
  json candidates = json::array();
  for (const auto& c : report.candidates) {
    const FiniteMetricSpace& space = *c.generator.space();
    candidates.push_back(
        {{"system", c.system},
         {"epsilon", format_rational(c.epsilon)},
         {"delta", format_rational(c.delta)},
         {"preperiod", labels_of(std::span<const Point>(c.fgpotp_witness.orbit.preperiod), space)},
         {"period", labels_of(std::span<const Point>(c.fgpotp_witness.orbit.period), space)},
         {"generator", image_json(c.generator)}});
  }
  doc["candidates"] = std::move(candidates);
  return dump(doc);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace shadowkit
