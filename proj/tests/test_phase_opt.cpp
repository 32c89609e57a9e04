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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>

#include "omnilink/phase_opt.hpp"

using namespace omnilink;
using Catch::Approx;

namespace {

struct TestScenario {
  ScenarioLayout layout;
  ChannelParams params;
};

// Desk-scale drop: surface 10 m from the base station, users scattered on
// both faces a few meters away, strong elements so the surface paths carry
// the objective.
TestScenario make_scenario(int rows, int cols, int users, int antennas,
                           std::uint64_t seed, bool include_direct = false,
                           double kappa = 4.0) {
  TestScenario ts;
  ts.layout.surface.center = {10.0, 0.0, 2.0};
  ts.layout.surface.rows = rows;
  ts.layout.surface.cols = cols;
  ts.layout.surface.element_gain = 200.0;
  ts.layout.surface.phase_levels = 4;
  ts.layout.normal = {-1.0, 0.0, 0.0};
  for (int k = 0; k < antennas; ++k) {
    ts.layout.sbs_antennas.push_back(
        {0.0, (k - 0.5 * (antennas - 1)) * 0.2, 2.0});
  }
  for (int i = 0; i < users; ++i) {
    std::uint64_t h = hash_combine(seed, 0x900d + i);
    const double r = 2.0 + 2.0 * uniform_half_open(h);
    h = mix64(h);
    const double phi = kTwoPi * uniform_half_open(h);
    const double away = 0.5 + std::abs(r * std::cos(phi));
    const double x = i % 2 == 0 ? 10.0 - away : 10.0 + away;
    ts.layout.mu_positions.push_back({x, r * std::sin(phi), 1.5});
  }
  ts.params.wavelength = 0.05;
  ts.params.rician_kappa = kappa;
  ts.params.alpha_surface = 1.0;
  ts.params.alpha_direct = 6.0;
  ts.params.noise_power = 1e-13;
  ts.params.include_direct = include_direct;
  return ts;
}

struct BuiltObjective {
  SumRateObjective objective;
  arma::cx_mat precoder;
  FadingDraws draws;
};

BuiltObjective make_objective(const TestScenario& ts, std::uint64_t seed) {
  const FadingDraws draws = FadingDraws::random(seed);
  const std::vector<double> zeros(ts.layout.surface.element_count(), 0.0);
  const Beamforming bf = digital_beamforming(
      compound_matrix(ts.layout, ts.params, zeros, draws),
      ts.params.noise_power, 1.0, 1.0);
  return {SumRateObjective(ts.layout, ts.params, draws, bf.precoder.v),
          bf.precoder.v, draws};
}

}  // namespace

TEST_CASE("single-phase search maximizes a pure cosine") {
  const auto result =
      optimize_single_phase([](double psi) { return std::cos(psi - 1.3); });
  REQUIRE(result.phase == Approx(1.3).margin(1e-6));
  REQUIRE(result.value == Approx(1.0).margin(1e-10));
}

TEST_CASE("single-phase search resolves flat objectives to the first point") {
  const auto result = optimize_single_phase([](double) { return 2.5; });
  REQUIRE(result.phase == 0.0);
  REQUIRE(result.value == 2.5);
}

TEST_CASE("objective matches the interference-free rate of the channel") {
  const TestScenario ts = make_scenario(2, 2, 2, 2, 5, true);
  const BuiltObjective built = make_objective(ts, 5);
  const std::vector<double> phases{0.3, 2.2, 4.0, 5.5};
  const ChannelMatrix h =
      compound_matrix(ts.layout, ts.params, phases, built.draws);
  double expected = 0.0;
  for (int i = 0; i < 2; ++i) {
    const std::complex<double> signal =
        arma::as_scalar(h.row(i) * built.precoder.col(i));
    expected += std::log2(1.0 + std::norm(signal) / ts.params.noise_power);
  }
  REQUIRE(built.objective.evaluate(phases) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("optimal single element co-phases the surface and direct paths") {
  TestScenario ts = make_scenario(1, 1, 1, 1, 0, true,
                                  std::numeric_limits<double>::infinity());
  ts.layout.mu_positions[0] = {17.013, 0.0, 2.0};
  const FadingDraws draws = FadingDraws::unit();
  arma::cx_mat v(1, 1);
  v(0, 0) = 1.0;
  const SumRateObjective objective(ts.layout, ts.params, draws, v);
  const OptimizerReport report = coordinate_descent(objective, {0.0});

  const double d1 = (ts.layout.sbs_antennas[0] - ts.layout.surface.center).norm();
  const double d2 = (ts.layout.mu_positions[0] - ts.layout.surface.center).norm();
  double aligned = std::fmod(-kTwoPi * (d1 + d2) / ts.params.wavelength, kTwoPi);
  if (aligned < 0.0) aligned += kTwoPi;
  REQUIRE(report.phases.values[0] == Approx(aligned).margin(1e-4));
  REQUIRE(report.objective >= objective.evaluate(std::vector<double>{0.0}));
}

TEST_CASE("coordinate descent improves monotonically") {
  const TestScenario ts = make_scenario(2, 3, 3, 3, 21);
  const BuiltObjective built = make_objective(ts, 21);
  const OptimizerReport report =
      coordinate_descent(built.objective, std::vector<double>(6, 0.0));
  REQUIRE(report.converged);
  REQUIRE_FALSE(report.objective_trace.empty());
  double previous = built.objective.evaluate(std::vector<double>(6, 0.0));
  for (double value : report.objective_trace) {
    REQUIRE(value >= previous - 1e-12);
    previous = value;
  }
  REQUIRE(report.objective == Approx(report.objective_trace.back()));
  REQUIRE(report.phases.size() == 6);
  REQUIRE_NOTHROW(report.phases.validate());
}

TEST_CASE("coordinate descent reaches the dense-grid optimum") {
  const TestScenario ts = make_scenario(2, 2, 2, 2, 33);
  const BuiltObjective built = make_objective(ts, 33);

  double grid_best = -1.0;
  const int grid = 32;
  std::vector<double> phases(4);
  for (int a = 0; a < grid; ++a) {
    phases[0] = a * kTwoPi / grid;
    for (int b = 0; b < grid; ++b) {
      phases[1] = b * kTwoPi / grid;
      for (int c = 0; c < grid; ++c) {
        phases[2] = c * kTwoPi / grid;
        for (int d = 0; d < grid; ++d) {
          phases[3] = d * kTwoPi / grid;
          grid_best = std::max(grid_best, built.objective.evaluate(phases));
        }
      }
    }
  }

  double best = -1.0;
  for (std::uint64_t start = 0; start < 9; ++start) {
    std::vector<double> s0(4, 0.0);
    for (int m = 0; m < 4 && start > 0; ++m) {
      s0[m] = uniform_half_open(hash_combine(start, m)) * kTwoPi;
    }
    best = std::max(best, coordinate_descent(built.objective, s0).objective);
  }
  REQUIRE(best >= grid_best - 1e-3);
}

TEST_CASE("coordinate descent on one element equals the single-phase search") {
  const TestScenario ts = make_scenario(1, 1, 2, 2, 8);
  const BuiltObjective built = make_objective(ts, 8);
  const OptimizerReport report =
      coordinate_descent(built.objective, std::vector<double>{0.0});

  const std::complex<double>* u = built.objective.element_coeffs(0);
  const auto& c = built.objective.static_coeffs();
  auto g = [&](double psi) {
    const std::complex<double> e = std::polar(1.0, -psi);
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
      total += std::log2(1.0 + std::norm(c[i] + e * u[i]) /
                                   built.objective.noise_power());
    }
    return total;
  };
  const SinglePhaseOptimum direct = optimize_single_phase(g);
  REQUIRE(report.phases.values[0] == Approx(direct.phase).margin(1e-12));
}

TEST_CASE("rounding brackets surround each phase on the grid") {
  SECTION("worked cases") {
    const auto on_zero = round_candidates(std::vector<double>{0.0}, 4);
    REQUIRE(on_zero[0].lower == 0.0);
    REQUIRE(on_zero[0].upper == Approx(kPi / 2));

    const auto wrapping = round_candidates(std::vector<double>{5.9}, 4);
    REQUIRE(wrapping[0].lower == Approx(3 * kPi / 2));
    REQUIRE(wrapping[0].upper == 0.0);

    const auto on_grid = round_candidates(std::vector<double>{kPi / 2}, 4);
    REQUIRE(on_grid[0].lower == Approx(kPi / 2));
    REQUIRE(on_grid[0].upper == Approx(kPi));

    const auto negative = round_candidates(std::vector<double>{-0.1}, 4);
    REQUIRE(negative[0].lower == Approx(3 * kPi / 2));
    REQUIRE(negative[0].upper == 0.0);
  }
  SECTION("bracket property over random phases") {
    std::uint64_t h = 9;
    for (int t = 0; t < 500; ++t) {
      h = mix64(h);
      const double psi = uniform_half_open(h) * kTwoPi;
      const auto b = round_candidates(std::vector<double>{psi}, 8);
      const double step = kTwoPi / 8;
      REQUIRE(psi - b[0].lower >= -1e-12);
      REQUIRE(psi - b[0].lower < step + 1e-12);
      const double gap = std::fmod(b[0].upper - b[0].lower + kTwoPi, kTwoPi);
      REQUIRE(gap == Approx(step));
    }
  }
  REQUIRE_THROWS_AS(round_candidates(std::vector<double>{0.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("exhaustive search scans candidates in lexicographic order") {
  const TestScenario ts = make_scenario(1, 2, 2, 2, 13);
  const BuiltObjective built = make_objective(ts, 13);
  const std::vector<std::vector<double>> candidates{{0.0, kPi}, {0.0, kPi}};
  const ExhaustiveResult result =
      exhaustive_search(built.objective, candidates);
  REQUIRE(result.evaluated == 4);

  double manual_best = -1.0;
  std::vector<double> manual;
  for (double a : candidates[0]) {
    for (double b : candidates[1]) {
      const double value = built.objective.evaluate(std::vector<double>{a, b});
      if (value > manual_best) {
        manual_best = value;
        manual = {a, b};
      }
    }
  }
  REQUIRE(result.objective == manual_best);
  REQUIRE(result.phases.values == manual);

  REQUIRE_THROWS_AS(
      exhaustive_search(built.objective, candidates, 3),
      std::invalid_argument);
}

TEST_CASE("branch and bound reproduces the exhaustive optimum") {
  int scenario = 0;
  for (const auto [rows, cols] : {std::pair{2, 2}, {2, 3}, {2, 4}}) {
    for (int levels : {2, 4}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ++scenario;
        TestScenario ts =
            make_scenario(rows, cols, 2 + scenario % 2, 3, seed * 71);
        ts.layout.surface.phase_levels = levels;
        const BuiltObjective built = make_objective(ts, seed * 71);
        const int m = rows * cols;
        const OptimizerReport descent = coordinate_descent(
            built.objective, std::vector<double>(m, 0.0));
        const OptimizerReport exact = branch_and_bound(
            built.objective, descent.phases.values, levels);
        REQUIRE(exact.converged);

        std::vector<std::vector<double>> candidates;
        for (const RoundingBracket& b :
             round_candidates(descent.phases.values, levels)) {
          candidates.push_back({b.lower, b.upper});
        }
        const ExhaustiveResult brute =
            exhaustive_search(built.objective, candidates);
        REQUIRE(exact.objective == brute.objective);
        REQUIRE(exact.phases.values == brute.phases.values);
        REQUIRE(exact.nodes_visited <= (1L << (m + 1)));
        REQUIRE_NOTHROW(exact.phases.validate());
      }
    }
  }
}

TEST_CASE("branch and bound respects its node budget") {
  const TestScenario ts = make_scenario(2, 4, 3, 3, 50);
  const BuiltObjective built = make_objective(ts, 50);
  const OptimizerReport descent =
      coordinate_descent(built.objective, std::vector<double>(8, 0.0));

  BranchAndBoundOptions options;
  options.node_budget = 2;
  const OptimizerReport capped = branch_and_bound(
      built.objective, descent.phases.values, 4, options);
  REQUIRE(capped.nodes_visited <= 2);
  REQUIRE_FALSE(capped.converged);

  // Even the capped search returns at least the nearest rounding.
  const auto brackets = round_candidates(descent.phases.values, 4);
  std::vector<double> nearest(8);
  for (int m = 0; m < 8; ++m) {
    const double psi = descent.phases.values[m];
    auto dist = [&](double g) {
      double d = std::fmod(std::abs(psi - g), kTwoPi);
      return std::min(d, kTwoPi - d);
    };
    nearest[m] = dist(brackets[m].lower) <= dist(brackets[m].upper)
                     ? brackets[m].lower
                     : brackets[m].upper;
  }
  REQUIRE(capped.objective >= built.objective.evaluate(nearest) - 1e-15);
}

TEST_CASE("branch and bound demands a budget for large surfaces") {
  const TestScenario ts = make_scenario(3, 7, 2, 2, 3);
  const BuiltObjective built = make_objective(ts, 3);
  REQUIRE_THROWS_AS(
      branch_and_bound(built.objective, std::vector<double>(21, 0.0), 4),
      std::invalid_argument);
}

TEST_CASE("alternating optimization monotonically improves the sum rate") {
  const TestScenario ts = make_scenario(2, 2, 2, 2, 60);
  const FadingDraws draws = FadingDraws::random(60);
  const AlternatingResult result =
      alternating_optimize(ts.layout, ts.params, draws, 1.0);

  REQUIRE(result.report.converged);
  REQUIRE(result.report.iterations >= 1);
  const auto& trace = result.report.objective_trace;
  REQUIRE(trace.size() >= 2);
  for (std::size_t t = 1; t < trace.size(); ++t) {
    REQUIRE(trace[t] >= trace[t - 1] - 1e-9);
  }
  REQUIRE(result.report.objective == Approx(trace.back()));
  REQUIRE(result.rates.sum_rate == Approx(result.report.objective));
  REQUIRE_NOTHROW(result.report.phases.validate());

  const AlternatingResult again =
      alternating_optimize(ts.layout, ts.params, draws, 1.0);
  REQUIRE(again.report.objective == result.report.objective);
  REQUIRE(again.report.phases.values == result.report.phases.values);
}

TEST_CASE("alternating optimization without a surface is pure beamforming") {
  TestScenario ts = make_scenario(1, 1, 2, 2, 61, true);
  ts.layout.surface.rows = 0;
  ts.layout.surface.cols = 0;
  const FadingDraws draws = FadingDraws::random(61);
  const AlternatingResult result =
      alternating_optimize(ts.layout, ts.params, draws, 1.0);
  const Beamforming direct = digital_beamforming(
      compound_matrix(ts.layout, ts.params, {}, draws), ts.params.noise_power,
      1.0, ts.params.bandwidth);
  REQUIRE(result.report.iterations == 0);
  REQUIRE(result.report.converged);
  REQUIRE(result.report.objective == direct.rates.sum_rate);
  REQUIRE(result.report.phases.values.empty());
}

TEST_CASE("phase vector validation") {
  PhaseVector continuous{{0.0, 3.1, 6.2}, PhaseDomain::kContinuous, 0};
  REQUIRE_NOTHROW(continuous.validate());
  continuous.values.push_back(kTwoPi);
  REQUIRE_THROWS_AS(continuous.validate(), std::invalid_argument);

  PhaseVector discrete{{0.0, kPi / 2, kPi}, PhaseDomain::kDiscrete, 4};
  REQUIRE_NOTHROW(discrete.validate());
  discrete.values.push_back(0.3);
  REQUIRE_THROWS_AS(discrete.validate(), std::invalid_argument);
}
