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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shadowkit/analyze.hpp"
#include "shadowkit/construct.hpp"
#include "shadowkit/errors.hpp"
#include "shadowkit/pseudo.hpp"
#include "shadowkit/system.hpp"

namespace shadowkit {

/// Malformed or invalid document. where() is a field path such as
/// "metric.matrix[1][0]" or a "line L, column C" position for syntax errors.
class DocumentError : public ValidationError {
 public:
  DocumentError(std::string where, const std::string& message)
      : ValidationError(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct SystemDocument {
  SpacePtr space;
  std::variant<SystemMap, NonautonomousSystem> dynamics;
  /// Absent in the document means the caller picks the default.
  std::optional<ContinuityClass> cls;

  bool is_autonomous() const { return std::holds_alternative<SystemMap>(dynamics); }
  /// Throws ValidationError for a nonautonomous document.
  const SystemMap& map() const;
  NonautonomousSystem sequence() const;
};

SystemDocument parse_system(std::string_view json);
SystemDocument load_system(const std::filesystem::path& path);
/// Always writes the metric as an explicit matrix of "p/q" strings.
std::string system_to_json(const SystemDocument& doc);
SystemDocument make_document(const SystemMap& f, std::optional<ContinuityClass> cls = {});

/// Counterexample trace. The generator is the nearby map whose orbit produced
/// the prefix for the structural and generated properties.
struct WitnessDocument {
  std::string property = "shadow";
  Rational epsilon;
  Rational delta;
  std::vector<Point> prefix;
  std::vector<PointSet> survivor_trace;
  std::optional<SystemMap> generator;
};

std::string witness_to_json(const WitnessDocument& witness, const FiniteMetricSpace& space);
WitnessDocument parse_witness(std::string_view json, const SpacePtr& space);

/// Pseudo-orbit files: {"delta": "p/q", "points": [...]} for finite sequences,
/// {"delta", "preperiod", "period"} for eventually periodic ones. Witness
/// documents are accepted too and read as the finite prefix.
PseudoOrbit parse_pseudo_orbit(std::string_view json, const SpacePtr& space);
std::string pseudo_orbit_to_json(const PseudoOrbit& xs, const FiniteMetricSpace& space);

std::string realization_to_json(const RealizationResult& result);

std::string modulus_to_csv(const ModulusTable& table);
std::string equivalence_to_json(const EquivalenceReport& report);
std::string separation_to_json(const SeparationReport& report);

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename. Throws Error on I/O failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace shadowkit
