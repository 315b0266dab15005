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
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "shadowkit/pseudo.hpp"
#include "shadowkit/rational.hpp"
#include "shadowkit/system.hpp"

namespace shadowkit {

/// A system whose orbit from `start` reproduces a requested sequence.
struct RealizationResult {
  std::variant<SystemMap, NonautonomousSystem> system;
  Point start = 0;
  /// rho (or rho_seq) between the input system and `system`.
  Rational rho_bound;

  bool is_autonomous() const { return std::holds_alternative<SystemMap>(system); }
  const SystemMap& map() const { return std::get<SystemMap>(system); }
  const NonautonomousSystem& sequence() const { return std::get<NonautonomousSystem>(system); }
};

/// g_i(x_i) = x_{i+1} and g_i = f_i elsewhere; rho_seq(F, G) <= xs.delta.
/// Throws PreconditionError unless xs is an xs.delta-pseudo-orbit for F.
RealizationResult realize_nonautonomous(const NonautonomousSystem& f, const PseudoOrbit& xs);

/// First pair i < j with x_i = x_j and x_{i+1} != x_{j+1}.
std::optional<std::pair<std::size_t, std::size_t>> check_consistency(std::span<const Point> xs);
/// Same check over one full window of an eventually periodic sequence (wrap edge included).
std::optional<std::pair<std::size_t, std::size_t>> check_consistency(const PseudoOrbit& xs);

/// Single map g = f except g(x_i) = x_{i+1}; rho(f, g) <= xs.delta.
/// Throws PreconditionError for inconsistent sequences or non-pseudo-orbits.
RealizationResult realize_autonomous(const SystemMap& f, const PseudoOrbit& xs);

/// Removes repeats from a closed gamma-pseudo-cycle y_0 = p, ..., y_{N-1}
/// (edges y_i -> y_{i+1} and y_{N-1} -> y_0). Each pass cuts the earliest
/// repeat y_n = y_{n+t} (smallest n, then smallest t) by dropping
/// y_{n+1}, ..., y_{n+t}. The result is repeat-free, starts at p, and keeps
/// every cyclic edge strictly below gamma.
std::vector<Point> compress_loops(std::span<const Point> ys, const SystemMap& f,
                                  const Rational& gamma);

/// Candidate replacement points for each point (each must lie within beta).
using FreshPool = std::vector<std::vector<Point>>;

/// Pool listing B_beta(x) minus x, nearest first.
FreshPool beta_ball_pool(const FiniteMetricSpace& space, const Rational& beta);

struct InjectiveRepair {
  std::vector<Point> points;
  /// sup_i d(x_i, y_i).
  Rational max_displacement;
  /// Per step: d(f(y_i), f(x_i)) + d(f(x_i), x_{i+1}) + d(x_{i+1}, y_{i+1}).
  std::vector<Rational> chain_bounds;
  /// max_i d(f(y_i), y_{i+1}); never exceeds the largest chain bound.
  Rational max_step;
};

/// Some B_beta(x_index) had no unused candidate left.
struct PoolExhausted {
  std::size_t index;
  Point point;
};

/// Replaces repeated points of a finite pseudo-orbit with unused nearby
/// points so the result is injective. Repeats with no unused candidate in
/// the pool are reported as PoolExhausted.
std::variant<InjectiveRepair, PoolExhausted> perturb_to_injective(const SystemMap& f,
                                                                 const PseudoOrbit& xs,
                                                                 const Rational& beta,
                                                                 const FreshPool& pool);

/// Checks d(x_{M+i}, f^i(x_M)) < bound for 0 <= i <= P and returns the first
/// violating i. Throws PreconditionError unless xs is a gamma_p-pseudo-orbit
/// covering index M + P.
std::optional<std::size_t> telescoping_bound_check(const SystemMap& f, std::span<const Point> xs,
                                                   std::size_t M, std::size_t P,
                                                   const Rational& gamma_p, const Rational& bound);

/// A gamma_p with gamma_p < m/P and d(a,b) < gamma_p => d(f^i a, f^i b) < m/P
/// for all i < P, where m = min(eps, delta'/2).
Rational telescoping_gamma(const SystemMap& f, std::size_t P, const Rational& epsilon,
                           const Rational& delta_prime);

/// Redefine f on a finite support F so that g|F = target.
struct PerturbationRequest {
  SystemMap base;
  std::vector<Point> support;
  std::vector<Point> target;
  ContinuityClass cls = ContinuityClass::all();
  Rational epsilon;
};

/// Class-admissible g with g|F = target and rho(f, g) < epsilon.
/// ALL: g = f off F. LIPSCHITZ: backtracking search; throws Infeasible.
SystemMap perturb_finite_support(const PerturbationRequest& request,
                                 const SearchLimits& limits = {});

/// Single-pair case: g(x) = y.
SystemMap weak_perturb(const SystemMap& f, Point x, Point y, const ContinuityClass& cls,
                       const Rational& epsilon, const SearchLimits& limits = {});

/// Largest delta such that every pair with d(f(x), y) < delta admits a weak
/// perturbation within epsilon. epsilon itself for ALL.
Threshold class_perturbation_delta(const SystemMap& f, const ContinuityClass& cls,
                                   const Rational& epsilon, const SearchLimits& limits = {});

/// Memoizes class_perturbation_delta per (map, class, epsilon). Thread-safe.
class PerturbationDeltaCache {
 public:
  Threshold get(const SystemMap& f, const ContinuityClass& cls, const Rational& epsilon,
                const SearchLimits& limits = {});

 private:
  using Key = std::tuple<std::vector<Point>, std::string, Rational>;
  std::mutex mutex_;
  std::map<Key, Threshold> entries_;
};

/// Per-step weak perturbations g_i(x_i) = x_{i+1} of a constant sequence.
/// Requires xs.delta <= epsilon; Infeasible names the blocking step.
RealizationResult realize_by_continuous_sequence(const SystemMap& f, const PseudoOrbit& xs,
                                                 const ContinuityClass& cls,
                                                 const Rational& epsilon,
                                                 const SearchLimits& limits = {});

/// Class-admissible g with rho(f, g) < delta and g^i(x_0) = x_i for i <= N.
RealizationResult realize_prefix_continuous(const SystemMap& f, const PseudoOrbit& xs,
                                            std::size_t N, const ContinuityClass& cls,
                                            const Rational& delta,
                                            const SearchLimits& limits = {});

/// Completion search shared by the perturbation routines and the generated
/// pseudo-orbit checkers: a class-admissible g with g(x) = t for every fixed
/// (x, t) and d(f(x), g(x)) < bound everywhere. Returns nullopt when none
/// exists; throws BudgetExceeded.
std::optional<SystemMap> find_completion(const SystemMap& base,
                                         std::span<const std::pair<Point, Point>> fixed,
                                         const Rational& bound, const ContinuityClass& cls,
                                         const SearchLimits& limits = {});

}  // namespace shadowkit
