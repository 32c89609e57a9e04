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

#ifndef OMNILINK_ANALYSIS_HPP_
#define OMNILINK_ANALYSIS_HPP_

#include <vector>

#include "omnilink/channel.hpp"
#include "omnilink/geometry.hpp"

namespace omnilink {

/// Closed-form two-user model: one user per face, direct-path SNR alpha_*,
/// shared surface SNR budget beta that the power ratio epsilon splits as
/// beta / (1 + epsilon) to the reflective face and beta epsilon / (1 +
/// epsilon) to the refractive face.
struct TwoUserSnr {
  double alpha_reflect = 0.0;
  double alpha_refract = 0.0;
  double beta = 0.0;

  void validate() const; // throws std::invalid_argument on negatives
};

/// Relative surface benefit of user `mu_index`: the sum over elements of
/// the departure pattern toward the user divided by its hop distance to the
/// alpha_surface power. Factors common to all users (transmit side, element
/// constants) are omitted. Ranks users by how much surface power they see.
double priority_index(const ScenarioLayout& layout,
                      const ChannelParams& params, int mu_index);

/// Sum rate of the two-user model at power split `epsilon` (>= 0).
double two_user_sum_rate(const TwoUserSnr& snr, double epsilon);

struct EpsilonOptimum {
  double value = 0.0; // optimal epsilon; 0 or +inf on the boundary
  bool interior = false;
};

/// Maximizer of two_user_sum_rate over epsilon. Interior optimum
/// (beta + alpha_reflect - alpha_refract) / (beta - alpha_reflect +
/// alpha_refract) when both numerator and denominator are positive,
/// otherwise the indicated boundary.
EpsilonOptimum optimal_epsilon_pair(const TwoUserSnr& snr);

struct SnrTerm {
  double alpha = 0.0; // direct-path SNR
  double beta = 0.0;  // full-surface SNR before the epsilon split
};

/// d/d(epsilon) of the multi-user sum rate with per-face user sets.
double sum_rate_epsilon_derivative(const std::vector<SnrTerm>& reflective,
                                   const std::vector<SnrTerm>& refractive,
                                   double epsilon);

struct SurfaceComparison {
  double rate_single_face = 0.0;  // reflect-only surface (epsilon = 0)
  double rate_dual_face = 0.0;    // dual-face surface at its best epsilon
  double ratio = 0.0;             // rate_dual_face / rate_single_face
};

/// Best dual-face sum rate against the reflect-only baseline for the
/// two-user model. Requires an interior epsilon optimum; throws
/// std::domain_error in boundary regimes. The ratio always lies in [1, 2).
SurfaceComparison ios_vs_irs_rates(const TwoUserSnr& snr);

struct SymmetricPairReport {
  double amplitude_ratio = 0.0;  // refractive/reflective per-element |h|
  double ratio_spread = 0.0;     // max relative deviation across (k, m)
  bool ratio_constant = false;   // spread <= 1e-9
  bool matches_epsilon = false;  // amplitude_ratio == epsilon to 1e-9
  // Best discrete phases per user, rotated so the first element sits at
  // level zero (the received power is invariant under global rotations).
  std::vector<double> argmax_reflect;
  std::vector<double> argmax_refract;
  bool argmax_match = false;
};

/// For two users mirrored across the surface plane (fading disabled, no
/// direct path): checks that every per-element channel magnitude ratio
/// equals the surface power ratio and that the two single-user optimal
/// discrete phase vectors coincide. Throws std::invalid_argument when the
/// positions are not mirror images or the grid is too large to enumerate.
SymmetricPairReport verify_symmetric_pair(const ScenarioLayout& layout,
                                          const ChannelParams& params,
                                          int reflect_index,
                                          int refract_index);

}  // namespace omnilink

#endif  // OMNILINK_ANALYSIS_HPP_
