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

#include "omnilink/geometry.hpp"
#include "omnilink/rng.hpp"

using namespace omnilink;
using Catch::Approx;

namespace {

SurfaceSpec default_surface(int rows, int cols) {
  SurfaceSpec s;
  s.center = {100.0, 0.0, 2.0};
  s.rows = rows;
  s.cols = cols;
  s.delta_x = 0.025;
  s.delta_y = 0.025;
  s.epsilon = 1.0;
  s.gamma_sq = 1.0;
  s.element_gain = 1.0;
  s.phase_levels = 4;
  return s;
}

ScenarioLayout default_layout(int rows = 1, int cols = 1) {
  ScenarioLayout layout;
  layout.surface = default_surface(rows, cols);
  layout.normal = {-1.0, 0.0, 0.0};
  layout.sbs_antennas = {{0.0, 0.0, 2.0}};
  return layout;
}

}  // namespace

TEST_CASE("single element sits at the surface center") {
  const ScenarioLayout layout = default_layout(1, 1);
  const Vec3 p = layout.element_position(0);
  REQUIRE(p.x == Approx(100.0));
  REQUIRE(p.y == Approx(0.0).margin(1e-15));
  REQUIRE(p.z == Approx(2.0));
}

TEST_CASE("two-element column splits the row pitch symmetrically") {
  const ScenarioLayout layout = default_layout(2, 1);
  const Vec3 a = layout.element_position(0);
  const Vec3 b = layout.element_position(1);
  REQUIRE(a.y == Approx(-0.0125));
  REQUIRE(b.y == Approx(0.0125));
  REQUIRE(a.x == Approx(100.0));
  REQUIRE(a.z == Approx(2.0));
  REQUIRE(b.z == Approx(2.0));
}

TEST_CASE("full grid positions are distinct with pitch spacing") {
  const ScenarioLayout layout = default_layout(20, 20);
  std::vector<Vec3> pos;
  for (int m = 0; m < 400; ++m) pos.push_back(layout.element_position(m));
  double min_dist = 1e9;
  for (int a = 0; a < 400; ++a) {
    for (int b = a + 1; b < 400; ++b) {
      min_dist = std::min(min_dist, (pos[a] - pos[b]).norm());
    }
  }
  REQUIRE(min_dist == Approx(0.025));
}

TEST_CASE("element index bounds are enforced") {
  const ScenarioLayout layout = default_layout(2, 2);
  REQUIRE_THROWS_AS(layout.element_position(-1), std::invalid_argument);
  REQUIRE_THROWS_AS(layout.element_position(4), std::invalid_argument);
}

TEST_CASE("side classification matches the base station side") {
  const ScenarioLayout layout = default_layout();
  REQUIRE(side_of(layout, {50.0, 0.0, 2.0}) == Side::kReflective);
  REQUIRE(side_of(layout, {120.0, -3.0, 1.5}) == Side::kRefractive);
  REQUIRE_THROWS_AS(side_of(layout, {100.0, 5.0, 2.0}), std::domain_error);
}

TEST_CASE("angle from normal covers both faces") {
  const Vec3 element{100.0, 0.0, 2.0};
  const Vec3 normal{-1.0, 0.0, 0.0};
  REQUIRE(angle_from_normal(element, {50.0, 0.0, 2.0}, normal) ==
          Approx(0.0).margin(1e-12));
  REQUIRE(angle_from_normal(element, {100.0, 5.0, 2.0}, normal) ==
          Approx(kPi / 2));
  REQUIRE(angle_from_normal(element, {150.0, 0.0, 2.0}, normal) == Approx(kPi));
  REQUIRE_THROWS_AS(angle_from_normal(element, element, normal),
                    std::invalid_argument);
}

TEST_CASE("incidence pattern is cos cubed") {
  REQUIRE(k_incident(0.0) == Approx(1.0));
  REQUIRE(k_incident(kPi / 4) == Approx(0.3535533905932737));
  REQUIRE(k_incident(kPi / 3) == Approx(0.125));
  // Angles past the plane fold back onto the incident face.
  REQUIRE(k_incident(2 * kPi / 3) == Approx(0.125));
}

TEST_CASE("departure pattern splits power between faces") {
  REQUIRE(k_departure(kPi / 3, 1.0) == Approx(0.0625));
  REQUIRE(k_departure(2 * kPi / 3, 1.0) == Approx(0.0625));
  REQUIRE(k_departure(2 * kPi / 3, 3.0) == Approx(0.09375));
  REQUIRE(k_departure(kPi / 3, 3.0) == Approx(0.03125));
  REQUIRE(k_departure(0.0, 0.5) == Approx(1.0 / 1.5));
  REQUIRE(k_departure(kPi, 0.5) == Approx(0.5 / 1.5));
  REQUIRE_THROWS_AS(k_departure(kPi / 2, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(k_departure(-0.1, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(k_departure(0.3, -1.0), std::invalid_argument);
}

TEST_CASE("departure pattern partitions the incident pattern") {
  std::uint64_t h = 77;
  for (int trial = 0; trial < 2000; ++trial) {
    h = mix64(h);
    const double theta = uniform_half_open(h) * (kPi / 2 - 1e-6);
    h = mix64(h);
    const double epsilon = uniform_half_open(h) * 10.0;
    const double reflected = k_departure(theta, epsilon);
    const double refracted = k_departure(kPi - theta, epsilon);
    REQUIRE(reflected + refracted == Approx(k_incident(theta)).margin(1e-12));
    if (reflected > 0.0) {
      REQUIRE(refracted / reflected == Approx(epsilon).margin(1e-12));
    }
  }
}

TEST_CASE("element gain magnitude and phase") {
  const SurfaceSpec spec = default_surface(1, 1);
  const auto g = element_gain(spec, 0.0, 0.0, 0.0);
  // sqrt(1 * 1 * 0.5 * 0.025 * 0.025 * 1)
  REQUIRE(std::abs(g) == Approx(0.017677669529663688));
  REQUIRE(std::arg(g) == Approx(0.0).margin(1e-15));

  const auto shifted = element_gain(spec, 0.0, 0.0, kPi / 2);
  REQUIRE(std::abs(shifted) == Approx(std::abs(g)));
  REQUIRE(std::arg(shifted) == Approx(-kPi / 2));
}

TEST_CASE("element gain magnitude does not depend on the phase shift") {
  const SurfaceSpec spec = default_surface(1, 1);
  const double reference = std::abs(element_gain(spec, 0.3, 2.0, 0.0));
  for (int s = 1; s < 16; ++s) {
    const double psi = s * kTwoPi / 16;
    REQUIRE(std::abs(element_gain(spec, 0.3, 2.0, psi)) == Approx(reference));
  }
}

TEST_CASE("passivity holds for the default element") {
  const SurfaceSpec spec = default_surface(1, 1);
  const PassivityReport report = passivity_check(spec);
  // Analytic worst case: element_gain * delta_x * delta_y * gamma_sq * pi/2.
  REQUIRE(report.max_radiated == Approx(9.817477042468103e-4).epsilon(1e-6));
  REQUIRE(report.passes);
}

TEST_CASE("passivity check flags an overdriven element") {
  SurfaceSpec spec = default_surface(1, 1);
  spec.element_gain = 2000.0;
  const PassivityReport report = passivity_check(spec);
  REQUIRE(report.max_radiated > 1.9);
  REQUIRE_FALSE(report.passes);
}

TEST_CASE("passivity is independent of the power split") {
  for (double epsilon : {0.0, 0.5, 1.0, 4.0, 100.0}) {
    SurfaceSpec spec = default_surface(1, 1);
    spec.epsilon = epsilon;
    REQUIRE(passivity_check(spec).max_radiated ==
            Approx(9.817477042468103e-4).epsilon(1e-6));
  }
}

TEST_CASE("surface spec validation rejects bad fields") {
  SurfaceSpec spec = default_surface(2, 2);
  REQUIRE_NOTHROW(spec.validate());

  SurfaceSpec bad = spec;
  bad.delta_x = 0.0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.epsilon = -0.1;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.gamma_sq = 1.5;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.phase_levels = 1;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.rows = -1;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

  SurfaceSpec absent = spec;
  absent.rows = 0;
  REQUIRE_NOTHROW(absent.validate());
  REQUIRE(absent.element_count() == 0);
}

TEST_CASE("layout validation enforces sides and the unit normal") {
  ScenarioLayout layout = default_layout(2, 2);
  layout.mu_positions = {{50.0, 3.0, 1.5}, {130.0, -2.0, 1.5}};
  REQUIRE_NOTHROW(layout.validate());

  ScenarioLayout bad = layout;
  bad.normal = {-2.0, 0.0, 0.0};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = layout;
  bad.sbs_antennas = {{150.0, 0.0, 2.0}}; // refractive side
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = layout;
  bad.mu_positions.push_back({100.0, 1.0, 1.0}); // on the plane
  REQUIRE_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("every off-plane user lands on exactly one side") {
  const ScenarioLayout layout = default_layout();
  std::uint64_t h = 1234;
  int reflective = 0;
  int refractive = 0;
  const int samples = 500;
  for (int t = 0; t < samples; ++t) {
    h = mix64(h);
    const double x = 100.0 + (uniform_half_open(h) - 0.5) * 80.0;
    if (std::abs(x - 100.0) < 1e-9) continue;
    h = mix64(h);
    const double y = (uniform_half_open(h) - 0.5) * 60.0;
    const Side side = side_of(layout, {x, y, 1.5});
    (side == Side::kReflective ? reflective : refractive)++;
  }
  REQUIRE(reflective + refractive == samples);
  REQUIRE(reflective > 0);
  REQUIRE(refractive > 0);
}
