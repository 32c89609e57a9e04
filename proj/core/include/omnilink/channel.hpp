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

#ifndef OMNILINK_CHANNEL_HPP_
#define OMNILINK_CHANNEL_HPP_

#include <armadillo>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "omnilink/geometry.hpp"
#include "omnilink/rng.hpp"

namespace omnilink {

/// Propagation constants shared by every link of a drop.
struct ChannelParams {
  double wavelength = 299792458.0 / 5.9e9; // carrier wavelength [m]
  double rician_kappa = 4.0;      // surface-link Rician factor; may be +inf
  double alpha_surface = 2.0;     // per-hop amplitude decay exponent
  double alpha_direct = 3.0;      // direct-link power decay exponent
  double noise_power = 2.51188643150958e-13; // receiver noise power [W]
  double bandwidth = 1.0;         // rate scaling [Hz]
  double tx_gain = 1.0;           // base station antenna power gain
  double rx_gain = 1.0;           // user antenna power gain
  bool include_direct = true;     // add the base-station-to-user path
  bool direct_pattern_cos3 = false; // apply |cos^3| patterns on the direct path

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// LoS/NLoS mixing weights (w_los, w_nlos) with w_los^2 + w_nlos^2 = 1.
/// kappa == +inf gives (1, 0); kappa == 0 gives (0, 1).
std::pair<double, double> rician_weights(double kappa);

/// Deterministic per-link small-scale fading draws. Each draw is a pure
/// function of (seed, link indices), so the same seed reproduces the same
/// realization for any evaluation order and any surface size.
class FadingDraws {
 public:
  static FadingDraws random(std::uint64_t seed) { return FadingDraws(seed, false); }
  /// All draws equal to 1 + 0i: deterministic channels, fading disabled.
  static FadingDraws unit() { return FadingDraws(0, true); }

  std::complex<double> surface(int k, int m, int i) const;
  std::complex<double> direct(int k, int i) const;
  std::uint64_t seed() const { return seed_; }
  bool is_unit() const { return unit_; }

 private:
  FadingDraws(std::uint64_t seed, bool unit) : seed_(seed), unit_(unit) {}
  std::uint64_t seed_;
  bool unit_;
};

using ChannelMatrix = arma::cx_mat; // user_count x antenna_count

/// Deterministic through-surface path for antenna k, element m, user i with
/// element phase shift `phase_shift`. Its magnitude carries the two-hop
/// distance decay and both element patterns; its argument carries the
/// electrical length of the path plus the applied phase shift.
std::complex<double> los_component(const ScenarioLayout& layout,
                                   const ChannelParams& params, int k, int m,
                                   int i, double phase_shift);

/// Magnitude of the deterministic path, used as the scattered-power scale.
double surface_path_gain(const ScenarioLayout& layout,
                         const ChannelParams& params, int k, int m, int i);

/// Scattered through-surface path: path gain times the unit-variance draw.
std::complex<double> nlos_component(const ScenarioLayout& layout,
                                    const ChannelParams& params, int k, int m,
                                    int i, const FadingDraws& draws);

/// Full Rician through-surface link for one element.
std::complex<double> surface_link(const ScenarioLayout& layout,
                                  const ChannelParams& params, int k, int m,
                                  int i, double phase_shift,
                                  const FadingDraws& draws);

/// Rayleigh base-station-to-user path. Throws std::invalid_argument when the
/// two positions coincide.
std::complex<double> direct_link(const ScenarioLayout& layout,
                                 const ChannelParams& params, int k, int i,
                                 const FadingDraws& draws);

/// Compound downlink matrix H with H(i, k) = sum of the per-element surface
/// links plus the direct path. `phase_shifts` must hold one entry per
/// surface element; an empty surface contributes nothing.
ChannelMatrix compound_matrix(const ScenarioLayout& layout,
                              const ChannelParams& params,
                              const std::vector<double>& phase_shifts,
                              const FadingDraws& draws);

}  // namespace omnilink

#endif  // OMNILINK_CHANNEL_HPP_
