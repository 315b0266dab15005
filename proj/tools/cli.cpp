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

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shadowkit/analyze.hpp"
#include "shadowkit/construct.hpp"
#include "shadowkit/document.hpp"
#include "shadowkit/errors.hpp"
#include "shadowkit/zoo.hpp"

namespace shadowkit::cli {
namespace {

namespace fs = std::filesystem;

struct Common {
  std::string system;
  std::string cls;
  std::size_t jobs = 1;
  std::string output;
};

Rational rational_arg(const std::string& text, const char* name) {
  try {
    Rational value = parse_rational(text);
    if (value <= 0) throw ValidationError(std::string("--") + name + " must be positive");
    return value;
  } catch (const std::invalid_argument&) {
    throw ValidationError(std::string("--") + name + ": cannot parse '" + text + "'");
  }
}

std::vector<Rational> grid_arg(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) grid.push_back(rational_arg(item, "eps-grid"));
  if (grid.empty()) throw ValidationError("--eps-grid is empty");
  return grid;
}

ContinuityClass class_arg(const std::string& text, const std::optional<ContinuityClass>& fallback) {
  if (text.empty()) return fallback.value_or(ContinuityClass::all());
  if (text == "all" || text == "ALL") return ContinuityClass::all();
  if (text.rfind("lip:", 0) == 0) return ContinuityClass::lipschitz(rational_arg(text.substr(4), "class"));
  throw ValidationError("--class must be all or lip:L, got '" + text + "'");
}

AnalysisOptions options_from_env() {
  AnalysisOptions options;
  if (const char* budget = std::getenv("SHADOWKIT_STATE_BUDGET")) {
    try {
      options.limits.max_states = std::stoull(budget);
    } catch (const std::exception&) {
      throw ValidationError(std::string("SHADOWKIT_STATE_BUDGET is not a number: ") + budget);
    }
  }
  return options;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file(path, contents);
  }
}

std::string default_witness_path(const std::string& system) {
  fs::path path(system);
  return (path.parent_path() / (path.stem().string() + ".witness.json")).string();
}

WitnessDocument orbit_witness(const std::string& property, const SystemMap& f, const Rational& eps,
                              const Rational& delta, std::vector<Point> prefix,
                              std::optional<SystemMap> generator) {
  WitnessDocument w;
  w.property = property;
  w.epsilon = eps;
  w.delta = delta;
  w.survivor_trace = shadow_survivors(f, prefix, eps);
  w.prefix = std::move(prefix);
  w.generator = std::move(generator);
  return w;
}

int run_check(const Common& c, const std::string& eps_text, const std::string& delta_text,
              const std::string& property, std::string witness_path, std::ostream& out) {
  const SystemDocument doc = load_system(c.system);
  const Rational eps = rational_arg(eps_text, "eps");
  const Rational delta = rational_arg(delta_text, "delta");
  const ContinuityClass cls = class_arg(c.cls, doc.cls);
  const AnalysisOptions options = options_from_env();
  if (witness_path.empty()) witness_path = default_witness_path(c.system);

  std::optional<WitnessDocument> witness;
  if (!doc.is_autonomous()) {
    if (property != "shadow" && property != "struct") {
      throw ValidationError("property '" + property + "' needs a single map, got a map sequence");
    }
    auto verdict = structural_check_nonaut(doc.sequence(), eps, delta, options.limits);
    if (!verdict.holds) {
      witness = WitnessDocument{property, eps, delta, verdict.witness, verdict.survivor_trace, {}};
    }
  } else {
    const SystemMap& f = doc.map();
    if (property == "shadow") {
      auto verdict = decide_shadowing(f, eps, delta, options.limits);
      if (!verdict.holds()) {
        witness = WitnessDocument{property, eps, delta, verdict.witness, verdict.survivor_trace, {}};
      }
    } else if (property == "struct") {
      auto verdict = structural_check(f, eps, delta, cls, options);
      if (!verdict.holds) {
        witness = orbit_witness(property, f, eps, delta, verdict.counterexample->prefix,
                                verdict.counterexample->g);
      }
    } else if (property == "fgpotp" || property == "cgpotp") {
      auto verdict = property == "fgpotp" ? fgpotp_check(f, eps, delta, options)
                                          : cgpotp_check(f, eps, delta, cls, options);
      if (!verdict.holds) witness = orbit_witness(property, f, eps, delta, verdict.prefix, verdict.generator);
    } else if (property == "usc") {
      auto verdict = usc_check(f, eps, delta, cls, options);
      if (!verdict.holds) {
        const SystemMap& g = *verdict.counterexample;
        EventualOrbit orbit = eventual_orbit(g, verdict.start);
        const std::size_t failure = *shadowing_failure(f, orbit.preperiod, orbit.period, eps);
        std::vector<Point> prefix = orbit.unroll(failure + 1);
        witness = orbit_witness(property, f, eps, delta, std::move(prefix), g);
      }
    } else {
      throw ValidationError("unknown property '" + property + "'");
    }
  }

  const std::string head = property + " eps=" + format_rational(eps) + " delta=" +
                           format_rational(delta) + " class=" + cls.to_string();
  if (!witness) {
    out << "HOLDS " << head << '\n';
    return kSuccess;
  }
  write_file(witness_path, witness_to_json(*witness, *doc.space));
  out << "FAILS " << head << " witness_length=" << witness->prefix.size() << " witness=" << witness_path
      << '\n';
  return kPropertyFalse;
}

int run_realize(const Common& c, const std::string& orbit_path, const std::string& mode,
                const std::string& delta_text, std::ostream& out) {
  const SystemDocument doc = load_system(c.system);
  const PseudoOrbit xs = parse_pseudo_orbit(read_file(orbit_path), doc.space);
  RealizationResult result = [&] {
    if (mode == "auto") return realize_autonomous(doc.map(), xs);
    if (mode == "nonauto") return realize_nonautonomous(doc.sequence(), xs);
    const std::string prefix = "continuous-prefix:";
    if (mode.rfind(prefix, 0) == 0) {
      std::size_t n = 0;
      try {
        n = std::stoull(mode.substr(prefix.size()));
      } catch (const std::exception&) {
        throw ValidationError("--mode " + mode + ": N must be a natural number");
      }
      const Rational delta = delta_text.empty() ? xs.delta : rational_arg(delta_text, "delta");
      return realize_prefix_continuous(doc.map(), xs, n, class_arg(c.cls, doc.cls), delta,
                                       options_from_env().limits);
    }
    throw ValidationError("--mode must be auto, nonauto or continuous-prefix:N");
  }();
  emit(c.output, realization_to_json(result), out);
  return kSuccess;
}

void add_common(CLI::App* sub, Common& c, bool with_system = true) {
  if (with_system) sub->add_option("system", c.system, "System document (JSON)")->required();
  sub->add_option("--jobs", c.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"shadowkit: shadowing analysis for finite dynamical systems", "shadowkit"};
  app.require_subcommand(1);
  Common c;

  auto* validate = app.add_subcommand("validate", "Load and validate a system document");
  add_common(validate, c);

  std::string eps;
  std::string delta;
  std::string property = "shadow";
  std::string witness;
  auto* check = app.add_subcommand("check", "Decide one property at (eps, delta)");
  add_common(check, c);
  check->add_option("--eps", eps, "epsilon as p/q")->required();
  check->add_option("--delta", delta, "delta as p/q")->required();
  check->add_option("--property", property, "shadow|struct|fgpotp|cgpotp|usc")
      ->check(CLI::IsMember({"shadow", "struct", "fgpotp", "cgpotp", "usc"}));
  check->add_option("--class", c.cls, "all or lip:L");
  check->add_option("--witness", witness, "Witness output path (default <system>.witness.json)");

  std::string grid;
  auto* modulus = app.add_subcommand("modulus", "Threshold table over an epsilon grid (CSV)");
  add_common(modulus, c);
  modulus->add_option("--eps-grid", grid, "Comma-separated epsilons")->required();
  modulus->add_option("--class", c.cls, "all or lip:L");
  modulus->add_option("-o,--output", c.output, "Output file (default stdout)");

  std::string orbit_path;
  std::string mode = "auto";
  auto* realize = app.add_subcommand("realize", "Realize a pseudo-orbit as an orbit of a nearby system");
  add_common(realize, c);
  realize->add_option("--pseudo-orbit", orbit_path, "Pseudo-orbit or witness file")->required();
  realize->add_option("--mode", mode, "auto|nonauto|continuous-prefix:N");
  realize->add_option("--class", c.cls, "all or lip:L (continuous-prefix mode)");
  realize->add_option("--delta", delta, "Target delta (continuous-prefix mode)");
  realize->add_option("-o,--output", c.output, "Output file (default stdout)");

  auto* equiv = app.add_subcommand("equiv", "Check the equivalence implications over a grid");
  add_common(equiv, c);
  equiv->add_option("--eps-grid", grid, "Comma-separated epsilons")->required();
  equiv->add_option("--class", c.cls, "all or lip:L");
  equiv->add_option("-o,--output", c.output, "Output file (default stdout)");

  std::string family;
  std::size_t budget = 1000;
  auto* search = app.add_subcommand("search-separation",
                                    "Look for systems where cgpotp holds but fgpotp fails");
  add_common(search, c, false);
  search->add_option("--family", family, "Zoo spec with ranges, e.g. tent:m=3..8")->required();
  search->add_option("--budget", budget, "Maximum (eps, delta) pairs to examine");
  search->add_option("--class", c.cls, "all or lip:L");
  search->add_option("-o,--output", c.output, "Output file (default stdout)");

  auto* zoo = app.add_subcommand("zoo", "Built-in example systems");
  zoo->require_subcommand(1);
  zoo->add_subcommand("list", "List zoo families");
  std::string spec;
  auto* build = zoo->add_subcommand("build", "Write a zoo system document");
  build->add_option("spec", spec, "e.g. rotation:m=4,k=1")->required();
  build->add_option("-o,--output", c.output, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*validate) {
      const SystemDocument doc = load_system(c.system);
      out << "valid: " << doc.space->size() << " points, ";
      if (doc.is_autonomous()) {
        out << "single map";
      } else {
        const auto seq = doc.sequence();
        out << "map sequence (preperiod " << seq.preperiod().size() << ", period " << seq.period().size() << ')';
      }
      out << ", class " << doc.cls.value_or(ContinuityClass::all()).to_string() << '\n';
      return kSuccess;
    }
    if (*check) return run_check(c, eps, delta, property, witness, out);
    if (*modulus) {
      const SystemDocument doc = load_system(c.system);
      auto table = modulus_table(doc.map(), grid_arg(grid), class_arg(c.cls, doc.cls), options_from_env(), c.jobs);
      emit(c.output, modulus_to_csv(table), out);
      return kSuccess;
    }
    if (*realize) return run_realize(c, orbit_path, mode, delta, out);
    if (*equiv) {
      const SystemDocument doc = load_system(c.system);
      auto report = equivalence_experiment(doc.map(), grid_arg(grid), class_arg(c.cls, doc.cls),
                                           options_from_env(), c.jobs);
      emit(c.output, equivalence_to_json(report), out);
      err << report.violations() << " of " << report.checks.size() << " checks violated\n";
      return report.violations() == 0 ? kSuccess : kPropertyFalse;
    }
    if (*search) {
      auto report = separation_search(expand_zoo_family(family), class_arg(c.cls, std::nullopt), budget,
                                      options_from_env());
      emit(c.output, separation_to_json(report), out);
      return report.candidates.empty() ? kSuccess : kPropertyFalse;
    }
    if (*zoo) {
      if (zoo->got_subcommand("list")) {
        for (const auto& info : list_zoo_families()) {
          out << info.name << '\t' << info.parameters << '\t' << info.description << '\n';
        }
        return kSuccess;
      }
      emit(c.output, system_to_json(make_document(build_zoo(spec))), out);
      return kSuccess;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kPropertyFalse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace shadowkit::cli
