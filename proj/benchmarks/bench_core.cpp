// Copyright 2026 The Omnilink Authors
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

#include <cmath>
#include <cstdint>
#include <vector>

#include "omnilink/channel.hpp"
#include "omnilink/phase_opt.hpp"
#include "omnilink/precoding.hpp"
#include "omnilink/rng.hpp"

namespace {

using namespace omnilink;

struct Scenario {
  ScenarioLayout layout;
  ChannelParams params;
};

Scenario make_scenario(int rows, int cols, int users, int antennas,
                       std::uint64_t seed) {
  Scenario sc;
  sc.layout.surface.center = {10.0, 0.0, 2.0};
  sc.layout.surface.rows = rows;
  sc.layout.surface.cols = cols;
  sc.layout.surface.element_gain = 200.0;
  sc.layout.surface.phase_levels = 4;
  sc.layout.normal = {-1.0, 0.0, 0.0};
  for (int k = 0; k < antennas; ++k) {
    sc.layout.sbs_antennas.push_back(
        {0.0, (k - 0.5 * (antennas - 1)) * 0.2, 2.0});
  }
  for (int i = 0; i < users; ++i) {
    std::uint64_t h = hash_combine(seed, 0x900d + i);
    const double r = 2.0 + 2.0 * uniform_half_open(h);
    h = mix64(h);
    const double phi = kTwoPi * uniform_half_open(h);
    const double away = 0.5 + std::abs(r * std::cos(phi));
    const double x = i % 2 == 0 ? 10.0 - away : 10.0 + away;
    sc.layout.mu_positions.push_back({x, r * std::sin(phi), 1.5});
  }
  sc.params.wavelength = 0.05;
  sc.params.rician_kappa = 4.0;
  sc.params.alpha_surface = 1.0;
  sc.params.alpha_direct = 6.0;
  sc.params.noise_power = 1e-13;
  sc.params.include_direct = false;
  return sc;
}

SumRateObjective make_objective(const Scenario& sc, std::uint64_t seed) {
  const FadingDraws draws = FadingDraws::random(seed);
  const std::vector<double> zeros(sc.layout.surface.element_count(), 0.0);
  const Beamforming bf = digital_beamforming(
      compound_matrix(sc.layout, sc.params, zeros, draws),
      sc.params.noise_power, 1.0, 1.0);
  return SumRateObjective(sc.layout, sc.params, draws, bf.precoder.v);
}

void BM_CompoundMatrix(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Scenario sc = make_scenario(side, side, 5, 5, 0xBE7C);
  const FadingDraws draws = FadingDraws::random(0xFADE);
  const std::vector<double> phases(sc.layout.surface.element_count(), 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        compound_matrix(sc.layout, sc.params, phases, draws));
  }
}
BENCHMARK(BM_CompoundMatrix)->Arg(4)->Arg(8)->Arg(12);

void BM_ObjectiveEvaluate(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Scenario sc = make_scenario(side, side, 5, 5, 0xE7A1);
  const SumRateObjective objective = make_objective(sc, 0xFADE);
  const std::vector<double> phases(sc.layout.surface.element_count(), 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective.evaluate(phases));
  }
}
BENCHMARK(BM_ObjectiveEvaluate)->Arg(8)->Arg(12);

void BM_CoordinateDescent(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Scenario sc = make_scenario(side, side, 5, 5, 0xCD);
  const SumRateObjective objective = make_objective(sc, 0xFADE);
  const std::vector<double> start(sc.layout.surface.element_count(), 0.0);
  DescentOptions options;
  options.grid_points = 64;
  options.refine_iters = 8;
  options.max_sweeps = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coordinate_descent(objective, start, options));
  }
}
BENCHMARK(BM_CoordinateDescent)->Arg(6)->Arg(12);

void BM_BranchAndBound(benchmark::State& state) {
  const Scenario sc = make_scenario(4, 4, 5, 5, 0xBB);
  const SumRateObjective objective = make_objective(sc, 0xFADE);
  DescentOptions descent;
  descent.grid_points = 64;
  descent.refine_iters = 8;
  descent.max_sweeps = 20;
  const OptimizerReport relaxed = coordinate_descent(
      objective, std::vector<double>(16, 0.0), descent);
  BranchAndBoundOptions options;
  options.node_budget = static_cast<long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        branch_and_bound(objective, relaxed.phases.values, 4, options));
  }
}
BENCHMARK(BM_BranchAndBound)->Arg(0)->Arg(2000);

void BM_DigitalBeamforming(benchmark::State& state) {
  const Scenario sc = make_scenario(8, 8, 5, 5, 0xDB);
  const FadingDraws draws = FadingDraws::random(0xFADE);
  const std::vector<double> zeros(sc.layout.surface.element_count(), 0.0);
  const arma::cx_mat h =
      compound_matrix(sc.layout, sc.params, zeros, draws);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        digital_beamforming(h, sc.params.noise_power, 1.0, 1.0));
  }
}
BENCHMARK(BM_DigitalBeamforming);

void BM_AlternatingOptimize(benchmark::State& state) {
  const Scenario sc = make_scenario(6, 6, 5, 5, 0xA0);
  const FadingDraws draws = FadingDraws::random(0xFADE);
  AlternatingOptions options;
  options.min_gain = 1e-3;
  options.max_outer = 6;
  options.descent.grid_points = 64;
  options.descent.refine_iters = 8;
  options.descent.max_sweeps = 20;
  options.bnb.node_budget = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        alternating_optimize(sc.layout, sc.params, draws, 1.0, options));
  }
}
BENCHMARK(BM_AlternatingOptimize);

}  // namespace

BENCHMARK_MAIN();
