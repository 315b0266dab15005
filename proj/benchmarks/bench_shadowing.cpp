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

#include <benchmark/benchmark.h>

#include <string>

#include "shadowkit/analyze.hpp"
#include "shadowkit/construct.hpp"
#include "shadowkit/pseudo.hpp"
#include "shadowkit/zoo.hpp"

namespace {

using shadowkit::Rational;

shadowkit::SystemMap tent(std::int64_t m) { return shadowkit::build_zoo("tent:m=" + std::to_string(m)); }

// Survivor automaton at the largest delta that still holds; the worst case
// for a HOLDS verdict since every reachable state is expanded.
void BM_DecideShadowingTent(benchmark::State& state) {
  const auto f = tent(state.range(0));
  const Rational eps(1, 4);
  const auto threshold = shadowkit::shadowing_modulus(f, eps);
  const Rational delta = threshold.is_infinite() ? Rational(2) : *threshold.value;
  std::size_t states = 0;
  for (auto _ : state) {
    auto verdict = shadowkit::decide_shadowing(f, eps, delta);
    states = verdict.states_explored;
    benchmark::DoNotOptimize(verdict);
  }
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_DecideShadowingTent)->RangeMultiplier(2)->Range(8, 64);

void BM_ShadowingModulusTent(benchmark::State& state) {
  const auto f = tent(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shadowkit::shadowing_modulus(f, Rational(1, 4)));
}
BENCHMARK(BM_ShadowingModulusTent)->RangeMultiplier(2)->Range(8, 64);

void BM_BruteForceOracle(benchmark::State& state) {
  const auto f = shadowkit::build_zoo("random:n=" + std::to_string(state.range(0)) + ",seed=5");
  const Rational eps = f.space()->diameter() / 2;
  const Rational delta = shadowkit::delta_candidates(f)[1];
  const std::size_t horizon = shadowkit::oracle_horizon(f.size());
  for (auto _ : state) benchmark::DoNotOptimize(shadowkit::brute_force_shadowing(f, eps, delta, horizon));
}
BENCHMARK(BM_BruteForceOracle)->DenseRange(3, 6);

void BM_StructuralCheck(benchmark::State& state) {
  const auto f = shadowkit::build_zoo("rotation:m=" + std::to_string(state.range(0)) + ",k=1");
  const Rational eps = f.space()->diameter() / 3;
  const Rational delta = shadowkit::delta_candidates(f)[1];
  for (auto _ : state) {
    benchmark::DoNotOptimize(shadowkit::structural_check(f, eps, delta, shadowkit::ContinuityClass::all()));
  }
}
BENCHMARK(BM_StructuralCheck)->DenseRange(3, 7);

void BM_FgpotpCheck(benchmark::State& state) {
  const auto f = tent(state.range(0));
  const Rational eps(1, 4);
  const Rational delta = shadowkit::delta_candidates(f)[1];
  for (auto _ : state) benchmark::DoNotOptimize(shadowkit::fgpotp_check(f, eps, delta));
}
BENCHMARK(BM_FgpotpCheck)->DenseRange(4, 8);

void BM_CompressLoops(benchmark::State& state) {
  const auto f = shadowkit::build_zoo("random:n=10,seed=3");
  const Rational gamma = f.space()->diameter();
  std::vector<shadowkit::Point> cycle;
  for (std::int64_t i = 0; i < state.range(0); ++i) cycle.push_back(static_cast<shadowkit::Point>((i * 7) % 10));
  cycle.push_back(0);
  for (auto _ : state) benchmark::DoNotOptimize(shadowkit::compress_loops(cycle, f, gamma));
}
BENCHMARK(BM_CompressLoops)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
