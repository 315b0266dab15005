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
#include "shadowkit/construct.hpp"

#include <algorithm>
#include <stdexcept>

#include "shadowkit/errors.hpp"

namespace shadowkit {
namespace {

void require_pseudo_orbit(std::optional<std::size_t> violation, const char* what) {
  if (violation) {
    throw PreconditionError(std::string(what) + ": not a pseudo-orbit at index " +
                            std::to_string(*violation));
  }
}

void require_nonempty(const PseudoOrbit& xs) {
  if (xs.stored() == 0) throw PreconditionError("pseudo-orbit is empty");
}

}  // namespace

RealizationResult realize_nonautonomous(const NonautonomousSystem& f, const PseudoOrbit& xs) {
  require_nonempty(xs);
  require_pseudo_orbit(pseudo_orbit_violation(f, xs, xs.delta), "realize_nonautonomous");

  std::vector<SystemMap> preperiod;
  std::vector<SystemMap> period;
  if (xs.is_finite()) {
    const std::size_t steps = xs.transitions();
    const std::size_t split = std::max(f.preperiod().size(), steps);
    for (std::size_t i = 0; i < split; ++i) {
      preperiod.push_back(i < steps ? f.at(i).with(xs.at(i), xs.at(i + 1)) : f.at(i));
    }
    for (std::size_t i = 0; i < f.period().size(); ++i) period.push_back(f.at(split + i));
  } else {
    const Window w = aligned_window(window_of(f), Window{xs.preperiod.size(), xs.period.size()});
    for (std::size_t i = 0; i < w.length(); ++i) {
      auto g = f.at(i).with(xs.at(i), xs.at(i + 1));
      (i < w.preperiod ? preperiod : period).push_back(std::move(g));
    }
  }
  NonautonomousSystem g(std::move(preperiod), std::move(period));
  Rational bound = rho_seq(f, g);
  return RealizationResult{std::move(g), xs.at(0), std::move(bound)};
}

std::optional<std::pair<std::size_t, std::size_t>> check_consistency(std::span<const Point> xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = i + 1; j + 1 < xs.size(); ++j) {
      if (xs[i] == xs[j] && xs[i + 1] != xs[j + 1]) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> check_consistency(const PseudoOrbit& xs) {
  const std::size_t count = xs.is_finite() ? xs.stored() : xs.stored() + 1;
  return check_consistency(xs.unroll(count));
}

RealizationResult realize_autonomous(const SystemMap& f, const PseudoOrbit& xs) {
  require_nonempty(xs);
  if (auto clash = check_consistency(xs)) {
    throw PreconditionError("inconsistent sequence: x_" + std::to_string(clash->first) + " = x_" +
                            std::to_string(clash->second) + " with different successors");
  }
  require_pseudo_orbit(pseudo_orbit_violation(f, xs, xs.delta), "realize_autonomous");
  std::vector<Point> image(f.image().begin(), f.image().end());
  for (std::size_t i = 0; i < xs.transitions(); ++i) image[xs.at(i)] = xs.at(i + 1);
  SystemMap g(f.space(), std::move(image));
  Rational bound = rho(f, g);
  return RealizationResult{std::move(g), xs.at(0), std::move(bound)};
}

std::vector<Point> compress_loops(std::span<const Point> ys, const SystemMap& f,
                                  const Rational& gamma) {
  if (ys.empty()) throw PreconditionError("compress_loops needs a nonempty cycle");
  const auto& space = *f.space();
  const std::uint32_t cutoff = space.levels_below(gamma);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const Point next = ys[(i + 1) % ys.size()];
    if (space.level(f(ys[i]), next) >= cutoff) {
      throw PreconditionError("compress_loops: cyclic edge " + std::to_string(i) +
                              " is not below gamma");
    }
  }
  std::vector<Point> cycle(ys.begin(), ys.end());
  for (;;) {
    bool cut = false;
    const std::size_t N = cycle.size();
    for (std::size_t n = 0; n + 1 < N && !cut; ++n) {
      for (std::size_t t = 1; n + t < N; ++t) {
        if (cycle[n] == cycle[n + t]) {
          cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(n + 1),
                      cycle.begin() + static_cast<std::ptrdiff_t>(n + t + 1));
          cut = true;
          break;
        }
      }
    }
    if (!cut) return cycle;
  }
}

FreshPool beta_ball_pool(const FiniteMetricSpace& space, const Rational& beta) {
  FreshPool pool(space.size());
  const std::uint32_t cutoff = space.levels_below(beta);
  for (Point x = 0; x < space.size(); ++x) {
    for (Point y = 0; y < space.size(); ++y) {
      if (y != x && space.level(x, y) < cutoff) pool[x].push_back(y);
    }
    std::stable_sort(pool[x].begin(), pool[x].end(),
                     [&](Point a, Point b) { return space.level(x, a) < space.level(x, b); });
  }
  return pool;
}

std::variant<InjectiveRepair, PoolExhausted> perturb_to_injective(const SystemMap& f,
                                                                 const PseudoOrbit& xs,
                                                                 const Rational& beta,
                                                                 const FreshPool& pool) {
  if (!xs.is_finite()) throw PreconditionError("perturb_to_injective needs a finite sequence");
  require_nonempty(xs);
  require_pseudo_orbit(pseudo_orbit_violation(f, xs, xs.delta), "perturb_to_injective");
  const auto& space = *f.space();
  if (pool.size() != space.size()) throw PreconditionError("fresh pool must list every point");
  for (Point x = 0; x < pool.size(); ++x) {
    for (Point c : pool[x]) {
      if (c >= space.size() || !(space.distance(x, c) < beta)) {
        throw PreconditionError("fresh pool candidate outside B_beta(" + std::to_string(x) + ")");
      }
    }
  }

  const auto& x = xs.preperiod;
  std::vector<bool> used(space.size(), false);
  std::vector<Point> y;
  y.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Point chosen = x[i];
    if (used[chosen]) {
      auto fresh = std::find_if(pool[x[i]].begin(), pool[x[i]].end(),
                                [&](Point c) { return !used[c]; });
      if (fresh == pool[x[i]].end()) return PoolExhausted{i, x[i]};
      chosen = *fresh;
    }
    used[chosen] = true;
    y.push_back(chosen);
  }

  InjectiveRepair repair;
  repair.max_displacement = 0;
  repair.max_step = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    repair.max_displacement = std::max(repair.max_displacement, space.distance(x[i], y[i]));
  }
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    Rational chain = space.distance(f(y[i]), f(x[i])) + space.distance(f(x[i]), x[i + 1]) +
                     space.distance(x[i + 1], y[i + 1]);
    const Rational& step = space.distance(f(y[i]), y[i + 1]);
    if (step > chain) throw std::logic_error("three-term chain bound violated");
    repair.max_step = std::max(repair.max_step, step);
    repair.chain_bounds.push_back(std::move(chain));
  }
  repair.points = std::move(y);
  return repair;
}

std::optional<std::size_t> telescoping_bound_check(const SystemMap& f, std::span<const Point> xs,
                                                   std::size_t M, std::size_t P,
                                                   const Rational& gamma_p, const Rational& bound) {
  if (M + P >= xs.size()) throw PreconditionError("sequence too short for M + P");
  require_pseudo_orbit(pseudo_orbit_violation(f, xs, gamma_p), "telescoping_bound_check");
  const auto& space = *f.space();
  Point image = xs[M];
  for (std::size_t i = 0; i <= P; ++i) {
    if (!(space.distance(xs[M + i], image) < bound)) return i;
    image = f(image);
  }
  return std::nullopt;
}

Rational telescoping_gamma(const SystemMap& f, std::size_t P, const Rational& epsilon,
                           const Rational& delta_prime) {
  if (P == 0) throw PreconditionError("period must be positive");
  const auto& space = *f.space();
  const Rational target = std::min(epsilon, delta_prime / 2) / static_cast<long long>(P);
  Rational gamma = target / 2;
  for (Point a = 0; a < f.size(); ++a) {
    for (Point b = a + 1; b < f.size(); ++b) {
      Point fa = a;
      Point fb = b;
      for (std::size_t i = 0; i < P; ++i) {
        if (space.distance(fa, fb) >= target) {
          gamma = std::min(gamma, space.distance(a, b));
          break;
        }
        fa = f(fa);
        fb = f(fb);
      }
    }
  }
  return gamma;
}

SystemMap perturb_finite_support(const PerturbationRequest& request, const SearchLimits& limits) {
  const auto& f = request.base;
  const auto& space = *f.space();
  if (request.support.size() != request.target.size()) {
    throw ValidationError("support and target differ in length");
  }
  std::vector<std::pair<Point, Point>> fixed;
  for (std::size_t i = 0; i < request.support.size(); ++i) {
    const Point x = request.support[i];
    const Point t = request.target[i];
    if (x >= space.size() || t >= space.size()) throw ValidationError("support leaves the space");
    for (const auto& [px, pt] : fixed) {
      if (px == x && pt != t) throw ValidationError("target is not a function on the support");
    }
    if (!(space.distance(f(x), t) < request.epsilon)) {
      throw PreconditionError("rho(g0, f|F) must be below epsilon at point " + std::to_string(x));
    }
    fixed.emplace_back(x, t);
  }
  auto g = find_completion(f, fixed, request.epsilon, request.cls, limits);
  if (!g) {
    throw Infeasible("no " + request.cls.to_string() + " completion within epsilon " +
                     format_rational(request.epsilon));
  }
  return std::move(*g);
}

SystemMap weak_perturb(const SystemMap& f, Point x, Point y, const ContinuityClass& cls,
                       const Rational& epsilon, const SearchLimits& limits) {
  return perturb_finite_support(PerturbationRequest{f, {x}, {y}, cls, epsilon}, limits);
}

Threshold class_perturbation_delta(const SystemMap& f, const ContinuityClass& cls,
                                   const Rational& epsilon, const SearchLimits& limits) {
  if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
  if (cls.is_all()) return Threshold::at(epsilon);
  const auto& space = *f.space();
  return threshold_search(f, [&](const Rational& delta) {
    const std::uint32_t cutoff = space.levels_below(delta);
    for (Point x = 0; x < f.size(); ++x) {
      for (Point y = 0; y < f.size(); ++y) {
        if (space.level(f(x), y) >= cutoff) continue;
        const std::pair<Point, Point> pin{x, y};
        if (!find_completion(f, std::span(&pin, 1), epsilon, cls, limits)) return false;
      }
    }
    return true;
  });
}

Threshold PerturbationDeltaCache::get(const SystemMap& f, const ContinuityClass& cls,
                                      const Rational& epsilon, const SearchLimits& limits) {
  Key key{std::vector<Point>(f.image().begin(), f.image().end()), cls.to_string(), epsilon};
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  Threshold value = class_perturbation_delta(f, cls, epsilon, limits);
  std::lock_guard lock(mutex_);
  entries_.emplace(std::move(key), value);
  return value;
}

RealizationResult realize_by_continuous_sequence(const SystemMap& f, const PseudoOrbit& xs,
                                                 const ContinuityClass& cls,
                                                 const Rational& epsilon,
                                                 const SearchLimits& limits) {
  require_nonempty(xs);
  if (xs.delta > epsilon) throw PreconditionError("pseudo-orbit delta exceeds epsilon");
  require_pseudo_orbit(pseudo_orbit_violation(f, xs, xs.delta), "realize_by_continuous_sequence");
  std::vector<SystemMap> steps;
  for (std::size_t i = 0; i < xs.transitions(); ++i) {
    try {
      steps.push_back(weak_perturb(f, xs.at(i), xs.at(i + 1), cls, epsilon, limits));
    } catch (const Infeasible& e) {
      throw Infeasible("step " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<SystemMap> preperiod;
  std::vector<SystemMap> period;
  if (xs.is_finite()) {
    preperiod = std::move(steps);
    period.push_back(f);
  } else {
    const auto split = static_cast<std::ptrdiff_t>(xs.preperiod.size());
    preperiod.assign(steps.begin(), steps.begin() + split);
    period.assign(steps.begin() + split, steps.end());
  }
  NonautonomousSystem g(std::move(preperiod), std::move(period));
  Rational bound = rho_seq(NonautonomousSystem::constant(f), g);
  return RealizationResult{std::move(g), xs.at(0), std::move(bound)};
}

RealizationResult realize_prefix_continuous(const SystemMap& f, const PseudoOrbit& xs,
                                            std::size_t N, const ContinuityClass& cls,
                                            const Rational& delta, const SearchLimits& limits) {
  require_nonempty(xs);
  if (xs.is_finite() && N > xs.transitions()) {
    throw PreconditionError("prefix length exceeds the sequence");
  }
  if (xs.delta > delta) throw PreconditionError("pseudo-orbit delta exceeds the target delta");
  const std::vector<Point> prefix = xs.unroll(N + 1);
  if (auto clash = check_consistency(prefix)) {
    throw PreconditionError("inconsistent prefix: x_" + std::to_string(clash->first) + " = x_" +
                            std::to_string(clash->second) + " with different successors");
  }
  require_pseudo_orbit(pseudo_orbit_violation(f, prefix, xs.delta), "realize_prefix_continuous");

  PerturbationRequest request{f, {}, {}, cls, delta};
  for (std::size_t i = 0; i < N; ++i) {
    if (std::find(request.support.begin(), request.support.end(), prefix[i]) !=
        request.support.end()) {
      continue;
    }
    request.support.push_back(prefix[i]);
    request.target.push_back(prefix[i + 1]);
  }
  SystemMap g = perturb_finite_support(request, limits);
  Rational bound = rho(f, g);
  return RealizationResult{std::move(g), prefix.front(), std::move(bound)};
}

}  // namespace shadowkit
