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

#include "omnilink/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace omnilink {

arma::cx_mat zf_direction_matrix(const arma::cx_mat& h, double max_condition) {
  const arma::uword n = h.n_rows;
  const arma::uword k = h.n_cols;
  if (n == 0 || k < n) {
    throw SingularChannelError("channel needs at least as many antennas as users");
  }
  arma::vec s = arma::svd(h);
  if (s(n - 1) <= 0.0 || s(0) / s(n - 1) > max_condition) {
    throw SingularChannelError("channel too ill conditioned for zero-forcing");
  }
  const arma::cx_mat gram = h * h.t();
  arma::cx_mat inv_gram;
  if (!arma::inv_sympd(inv_gram, gram)) {
    throw SingularChannelError("channel Gram matrix is not invertible");
  }
  arma::cx_mat v = h.t() * inv_gram;
  // One residual-correction step keeps H V = I accurate even for channels
  // near the condition cap.
  const arma::cx_mat residual =
      arma::cx_mat(arma::eye<arma::mat>(n, n), arma::zeros<arma::mat>(n, n)) -
      h * v;
  v += v * residual;
  return v;
}

WaterFilling water_filling(const std::vector<double>& nu, double noise_power,
                           double power_budget) {
  const int n = static_cast<int>(nu.size());
  if (n == 0) throw std::invalid_argument("no users to allocate");
  if (noise_power <= 0.0 || power_budget <= 0.0) {
    throw std::invalid_argument("noise power and budget must be positive");
  }
  for (double v : nu) {
    if (v <= 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("per-user power costs must be positive");
    }
  }
  std::vector<int> order(nu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nu[a] < nu[b]; });

  // Users are activated cheapest first; the largest active set whose common
  // water level clears its most expensive member is optimal.
  double level = 0.0;
  int active = 0;
  double cost_sum = 0.0;
  std::vector<double> prefix(nu.size());
  for (int j = 0; j < n; ++j) {
    cost_sum += nu[order[j]];
    prefix[j] = cost_sum;
  }
  for (int j = n - 1; j >= 0; --j) {
    const double w = (power_budget + noise_power * prefix[j]) / (j + 1);
    if (w > nu[order[j]] * noise_power) {
      level = w;
      active = j + 1;
      break;
    }
  }

  WaterFilling result;
  result.powers.assign(nu.size(), 0.0);
  result.water_level = level;
  result.active_count = active;
  for (int j = 0; j < active; ++j) {
    const int i = order[j];
    result.powers[i] = (level - nu[i] * noise_power) / nu[i];
  }
  return result;
}

RateReport sum_rate(const arma::cx_mat& h, const arma::cx_mat& v,
                    double noise_power, double bandwidth) {
  const arma::uword n = h.n_rows;
  if (v.n_rows != h.n_cols || v.n_cols != n) {
    throw std::invalid_argument("precoder shape does not match the channel");
  }
  if (noise_power <= 0.0 || bandwidth <= 0.0) {
    throw std::invalid_argument("noise power and bandwidth must be positive");
  }
  const arma::cx_mat coupling = h * v; // coupling(i, j): stream j at user i
  RateReport report;
  report.sinr.resize(n);
  report.rate.resize(n);
  for (arma::uword i = 0; i < n; ++i) {
    const double signal = std::norm(coupling(i, i));
    double interference = 0.0;
    for (arma::uword j = 0; j < n; ++j) {
      if (j != i) interference += std::norm(coupling(i, j));
    }
    const double sinr = signal / (interference + noise_power);
    report.sinr[i] = sinr;
    report.rate[i] = bandwidth * std::log2(1.0 + sinr);
    report.sum_rate += report.rate[i];
  }
  return report;
}

Beamforming digital_beamforming(const arma::cx_mat& h, double noise_power,
                                double power_budget, double bandwidth,
                                double max_condition) {
  const arma::cx_mat directions = zf_direction_matrix(h, max_condition);
  const arma::uword n = h.n_rows;
  std::vector<double> nu(n);
  for (arma::uword i = 0; i < n; ++i) {
    const double col_norm = arma::norm(directions.col(i));
    nu[i] = col_norm * col_norm; // transmit power per unit received power
  }
  const WaterFilling wf = water_filling(nu, noise_power, power_budget);

  Beamforming result;
  result.precoder.v = directions;
  for (arma::uword i = 0; i < n; ++i) {
    result.precoder.v.col(i) *= std::sqrt(wf.powers[i]);
  }
  result.precoder.powers = wf.powers;
  result.precoder.water_level = wf.water_level;
  result.rates = sum_rate(h, result.precoder.v, noise_power, bandwidth);
  return result;
}

}  // namespace omnilink
