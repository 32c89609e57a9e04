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
#include <complex>

#include "omnilink/precoding.hpp"
#include "omnilink/rng.hpp"

using namespace omnilink;
using Catch::Approx;

namespace {

arma::cx_mat random_channel(int n, int k, std::uint64_t seed) {
  arma::cx_mat h(n, k);
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      state = mix64(state);
      h(i, j) = complex_normal(state);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("zero-forcing the identity channel is the identity") {
  const arma::cx_mat h(arma::eye<arma::mat>(2, 2), arma::zeros<arma::mat>(2, 2));
  const arma::cx_mat v = zf_direction_matrix(h);
  REQUIRE(std::abs(v(0, 0) - std::complex<double>{1.0, 0.0}) < 1e-14);
  REQUIRE(std::abs(v(1, 0)) < 1e-14);
}

TEST_CASE("zero-forcing inverts random channels") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const arma::cx_mat h = random_channel(n, n + 1, seed);
    const arma::cx_mat v = zf_direction_matrix(h);
    const arma::cx_mat residual =
        h * v - arma::cx_mat(arma::eye<arma::mat>(n, n),
                             arma::zeros<arma::mat>(n, n));
    REQUIRE(arma::abs(residual).max() < 1e-8);
  }
}

TEST_CASE("zero-forcing rejects deficient or fat-side channels") {
  arma::cx_mat h = random_channel(3, 4, 11);
  h.row(2) = h.row(1); // duplicated user direction
  REQUIRE_THROWS_AS(zf_direction_matrix(h), SingularChannelError);

  const arma::cx_mat wide = random_channel(4, 3, 12); // more users than antennas
  REQUIRE_THROWS_AS(zf_direction_matrix(wide), SingularChannelError);

  arma::cx_mat ill(2, 2, arma::fill::zeros);
  ill(0, 0) = 1.0;
  ill(1, 1) = 1e-13;
  REQUIRE_THROWS_AS(zf_direction_matrix(ill), SingularChannelError);
}

TEST_CASE("water-filling matches hand-solved allocations") {
  SECTION("expensive user is shut off") {
    const WaterFilling wf = water_filling({1.0, 4.0}, 1.0, 1.0);
    REQUIRE(wf.powers[0] == Approx(1.0));
    REQUIRE(wf.powers[1] == 0.0);
    REQUIRE(wf.water_level == Approx(2.0));
    REQUIRE(wf.active_count == 1);
  }
  SECTION("symmetric users split the budget") {
    const WaterFilling wf = water_filling({1.0, 1.0}, 1.0, 2.0);
    REQUIRE(wf.powers[0] == Approx(1.0));
    REQUIRE(wf.powers[1] == Approx(1.0));
    REQUIRE(wf.water_level == Approx(2.0));
  }
  SECTION("single user receives the whole budget") {
    const WaterFilling wf = water_filling({2.0}, 0.5, 3.0);
    REQUIRE(wf.powers[0] == Approx(1.5));
    REQUIRE(wf.water_level == Approx(4.0));
  }
  SECTION("order of the input does not matter") {
    const WaterFilling wf = water_filling({4.0, 1.0}, 1.0, 1.0);
    REQUIRE(wf.powers[0] == 0.0);
    REQUIRE(wf.powers[1] == Approx(1.0));
  }
}

TEST_CASE("water-filling input validation") {
  REQUIRE_THROWS_AS(water_filling({}, 1.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(water_filling({1.0, -1.0}, 1.0, 1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(water_filling({1.0}, 0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(water_filling({1.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("water-filling satisfies budget and complementary slackness") {
  std::uint64_t state = 314;
  for (int trial = 0; trial < 300; ++trial) {
    state = mix64(state);
    const int n = 1 + static_cast<int>(state % 6);
    std::vector<double> nu(n);
    for (double& v : nu) {
      state = mix64(state);
      v = std::pow(10.0, (uniform_half_open(state) - 0.5) * 4.0);
    }
    state = mix64(state);
    const double noise = std::pow(10.0, (uniform_half_open(state) - 0.5) * 2.0);
    state = mix64(state);
    const double budget = std::pow(10.0, uniform_half_open(state) * 2.0);

    const WaterFilling wf = water_filling(nu, noise, budget);
    double spent = 0.0;
    for (int i = 0; i < n; ++i) {
      REQUIRE(wf.powers[i] >= 0.0);
      spent += nu[i] * wf.powers[i];
      if (wf.powers[i] > 0.0) {
        REQUIRE(nu[i] * wf.powers[i] + nu[i] * noise ==
                Approx(wf.water_level).epsilon(1e-9));
      } else {
        REQUIRE(nu[i] * noise >= wf.water_level - 1e-9 * wf.water_level);
      }
    }
    REQUIRE(spent == Approx(budget).epsilon(1e-9));
  }
}

TEST_CASE("water-filling dominates random feasible allocations") {
  std::uint64_t state = 2718;
  for (int trial = 0; trial < 50; ++trial) {
    state = mix64(state);
    const int n = 2 + static_cast<int>(state % 4);
    std::vector<double> nu(n);
    for (double& v : nu) {
      state = mix64(state);
      v = std::pow(10.0, (uniform_half_open(state) - 0.5) * 3.0);
    }
    const double noise = 1.0;
    const double budget = 5.0;
    const WaterFilling wf = water_filling(nu, noise, budget);
    double best = 0.0;
    for (int i = 0; i < n; ++i) best += std::log2(1.0 + wf.powers[i] / noise);

    for (int draw = 0; draw < 500; ++draw) {
      double weighted = 0.0;
      std::vector<double> g(n);
      for (int i = 0; i < n; ++i) {
        state = mix64(state);
        g[i] = -std::log(uniform_unit(state));
        weighted += nu[i] * g[i];
      }
      double value = 0.0;
      for (int i = 0; i < n; ++i) {
        value += std::log2(1.0 + budget * g[i] / weighted / noise);
      }
      REQUIRE(value <= best + 1e-12);
    }
  }
}

TEST_CASE("rate report for a hand-computed coupling") {
  arma::cx_mat h(2, 2, arma::fill::zeros);
  h(0, 0) = 1.0;
  h(0, 1) = 0.1;
  h(1, 0) = 0.1;
  h(1, 1) = 1.0;
  const arma::cx_mat v(arma::eye<arma::mat>(2, 2), arma::zeros<arma::mat>(2, 2));
  const RateReport report = sum_rate(h, v, 1.0, 1.0);
  // SINR = 1 / (0.01 + 1) per user.
  REQUIRE(report.sinr[0] == Approx(1.0 / 1.01));
  REQUIRE(report.rate[0] == Approx(0.9928402).epsilon(1e-6));
  REQUIRE(report.sum_rate == Approx(2 * 0.9928402).epsilon(1e-6));

  const RateReport wide = sum_rate(h, v, 1.0, 2.5);
  REQUIRE(wide.sum_rate == Approx(2.5 * report.sum_rate).epsilon(1e-12));
}

TEST_CASE("digital beamforming realizes the water-filled powers") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const arma::cx_mat h = random_channel(n, n + 2, seed);
    const Beamforming bf = digital_beamforming(h, 0.1, 10.0, 1.0);

    const arma::cx_mat coupling = h * bf.precoder.v;
    double transmit = 0.0;
    double expected_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double received = std::norm(coupling(i, i));
      REQUIRE(received == Approx(bf.precoder.powers[i]).margin(1e-10));
      for (int j = 0; j < n; ++j) {
        if (j != i) REQUIRE(std::abs(coupling(i, j)) < 1e-7);
      }
      const double col_norm = arma::norm(bf.precoder.v.col(i));
      transmit += col_norm * col_norm;
      expected_sum += std::log2(1.0 + bf.precoder.powers[i] / 0.1);
    }
    REQUIRE(transmit <= 10.0 + 1e-9);
    REQUIRE(bf.rates.sum_rate == Approx(expected_sum).epsilon(1e-9));
  }
}

TEST_CASE("beamforming starves a user whose direction is too costly") {
  arma::cx_mat h = random_channel(3, 4, 77);
  h.row(2) *= 1e-4; // nearly orthogonal-complement user, huge nu
  const Beamforming bf = digital_beamforming(h, 1.0, 1.0, 1.0);
  REQUIRE(bf.precoder.powers[2] == 0.0);
  REQUIRE(bf.rates.rate[2] == Approx(0.0).margin(1e-12));
  REQUIRE(std::isfinite(bf.rates.sum_rate));
}
