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

#ifndef OMNILINK_PRECODING_HPP_
#define OMNILINK_PRECODING_HPP_

#include <armadillo>
#include <stdexcept>
#include <vector>

namespace omnilink {

/// Raised when a channel matrix is rank deficient or too ill conditioned
/// for zero-forcing.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unnormalized zero-forcing directions V = H^H (H H^H)^{-1} for an
/// N x K channel with K >= N. H V = I up to rounding. Throws
/// SingularChannelError when rank(H) < N or cond(H) > max_condition.
arma::cx_mat zf_direction_matrix(const arma::cx_mat& h,
                                 double max_condition = 1e12);

struct WaterFilling {
  std::vector<double> powers; // received power per user, original order
  double water_level = 0.0;   // common level of the active users
  int active_count = 0;
};

/// Exact water-filling for rates sum log2(1 + p_i / noise) under the
/// transmit budget sum nu_i p_i <= budget, where nu_i is the transmit power
/// spent per unit of received power for user i. Solved by the closed-form
/// active-set rule, no iteration or tolerance involved.
WaterFilling water_filling(const std::vector<double>& nu, double noise_power,
                           double power_budget);

struct RateReport {
  std::vector<double> sinr;
  std::vector<double> rate;   // bandwidth * log2(1 + sinr)
  double sum_rate = 0.0;
};

/// SINR and rates for an arbitrary precoder `v` (K x N), treating every
/// other user's stream as interference.
RateReport sum_rate(const arma::cx_mat& h, const arma::cx_mat& v,
                    double noise_power, double bandwidth);

struct Precoder {
  arma::cx_mat v;              // K x N, columns carry the allocated powers
  std::vector<double> powers;  // received power per user
  double water_level = 0.0;
};

struct Beamforming {
  Precoder precoder;
  RateReport rates;
};

/// Zero-forcing directions combined with water-filling power allocation.
Beamforming digital_beamforming(const arma::cx_mat& h, double noise_power,
                                double power_budget, double bandwidth,
                                double max_condition = 1e12);

}  // namespace omnilink

#endif  // OMNILINK_PRECODING_HPP_
