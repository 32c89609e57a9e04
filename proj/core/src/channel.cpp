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

#include "omnilink/channel.hpp"

#include <stdexcept>

namespace omnilink {

namespace {

constexpr std::uint64_t kSurfaceStream = 0x5fc1a7b2e49d0361ULL;
constexpr std::uint64_t kDirectStream = 0xa93bd2c47e15f809ULL;

// (4*pi)^{3/2}, the spherical spreading constant of the two-hop path.
const double kSpreading = std::pow(4.0 * kPi, 1.5);

struct PathTerms {
  double amplitude = 0.0;
  double electrical_phase = 0.0; // 2*pi * (d1 + d2) / lambda
};

PathTerms surface_path_terms(const ScenarioLayout& layout,
                             const ChannelParams& params, int k, int m,
                             int i) {
  const Vec3 e = layout.element_position(m);
  const Vec3& tx = layout.sbs_antennas.at(k);
  const Vec3& rx = layout.mu_positions.at(i);
  const double d1 = (tx - e).norm();
  const double d2 = (rx - e).norm();
  const double theta_a = angle_from_normal(e, tx, layout.normal);
  const double theta_d = angle_from_normal(e, rx, layout.normal);
  const SurfaceSpec& s = layout.surface;
  const double patterns = k_incident(theta_a) * k_departure(theta_d, s.epsilon);
  const double gains = std::sqrt(params.tx_gain * s.element_gain *
                                 params.rx_gain * s.delta_x * s.delta_y *
                                 s.gamma_sq);
  PathTerms terms;
  terms.amplitude = params.wavelength * patterns * gains /
                    (kSpreading * std::pow(d1, params.alpha_surface) *
                     std::pow(d2, params.alpha_surface));
  terms.electrical_phase = kTwoPi * (d1 + d2) / params.wavelength;
  return terms;
}

}  // namespace

void ChannelParams::validate() const {
  if (wavelength <= 0.0) {
    throw std::invalid_argument("wavelength must be positive");
  }
  if (rician_kappa < 0.0) { // +inf is a valid LoS-only setting
    throw std::invalid_argument("rician_kappa must be non-negative");
  }
  if (noise_power <= 0.0) {
    throw std::invalid_argument("noise power must be positive");
  }
  if (bandwidth <= 0.0) {
    throw std::invalid_argument("bandwidth must be positive");
  }
  if (tx_gain <= 0.0 || rx_gain <= 0.0) {
    throw std::invalid_argument("antenna gains must be positive");
  }
  if (alpha_surface < 0.0 || alpha_direct < 0.0) {
    throw std::invalid_argument("decay exponents must be non-negative");
  }
}

std::pair<double, double> rician_weights(double kappa) {
  if (kappa < 0.0) {
    throw std::invalid_argument("rician_kappa must be non-negative");
  }
  if (std::isinf(kappa)) return {1.0, 0.0};
  const double w_los = std::sqrt(kappa / (1.0 + kappa));
  const double w_nlos = std::sqrt(1.0 / (1.0 + kappa));
  return {w_los, w_nlos};
}

std::complex<double> FadingDraws::surface(int k, int m, int i) const {
  if (unit_) return {1.0, 0.0};
  std::uint64_t h = hash_combine(seed_, kSurfaceStream);
  h = hash_combine(h, static_cast<std::uint64_t>(k));
  h = hash_combine(h, static_cast<std::uint64_t>(m));
  h = hash_combine(h, static_cast<std::uint64_t>(i));
  return complex_normal(h);
}

std::complex<double> FadingDraws::direct(int k, int i) const {
  if (unit_) return {1.0, 0.0};
  std::uint64_t h = hash_combine(seed_, kDirectStream);
  h = hash_combine(h, static_cast<std::uint64_t>(k));
  h = hash_combine(h, static_cast<std::uint64_t>(i));
  return complex_normal(h);
}

std::complex<double> los_component(const ScenarioLayout& layout,
                                   const ChannelParams& params, int k, int m,
                                   int i, double phase_shift) {
  const PathTerms terms = surface_path_terms(layout, params, k, m, i);
  return std::polar(terms.amplitude,
                    -(terms.electrical_phase + phase_shift));
}

double surface_path_gain(const ScenarioLayout& layout,
                         const ChannelParams& params, int k, int m, int i) {
  return surface_path_terms(layout, params, k, m, i).amplitude;
}

std::complex<double> nlos_component(const ScenarioLayout& layout,
                                    const ChannelParams& params, int k, int m,
                                    int i, const FadingDraws& draws) {
  return surface_path_gain(layout, params, k, m, i) * draws.surface(k, m, i);
}

std::complex<double> surface_link(const ScenarioLayout& layout,
                                  const ChannelParams& params, int k, int m,
                                  int i, double phase_shift,
                                  const FadingDraws& draws) {
  const auto [w_los, w_nlos] = rician_weights(params.rician_kappa);
  std::complex<double> h = w_los * los_component(layout, params, k, m, i,
                                                 phase_shift);
  if (w_nlos != 0.0) {
    h += w_nlos * nlos_component(layout, params, k, m, i, draws);
  }
  return h;
}

std::complex<double> direct_link(const ScenarioLayout& layout,
                                 const ChannelParams& params, int k, int i,
                                 const FadingDraws& draws) {
  const Vec3& tx = layout.sbs_antennas.at(k);
  const Vec3& rx = layout.mu_positions.at(i);
  const double d = (rx - tx).norm();
  if (d < 1e-9) {
    throw std::invalid_argument("user coincides with an antenna");
  }
  double pattern = 1.0;
  if (params.direct_pattern_cos3) {
    // Antennas face the surface: boresights along -normal (transmit) and
    // +normal (receive).
    const Vec3 anti = layout.normal * -1.0;
    pattern = k_incident(angle_from_normal(tx, rx, anti)) *
              k_incident(angle_from_normal(rx, tx, layout.normal));
  }
  const double amplitude = std::sqrt(params.tx_gain * pattern * params.rx_gain *
                                     std::pow(d, -params.alpha_direct));
  return amplitude * draws.direct(k, i);
}

ChannelMatrix compound_matrix(const ScenarioLayout& layout,
                              const ChannelParams& params,
                              const std::vector<double>& phase_shifts,
                              const FadingDraws& draws) {
  const int m_count = layout.surface.element_count();
  if (static_cast<int>(phase_shifts.size()) != m_count) {
    throw std::invalid_argument("one phase shift per element required");
  }
  const int n = layout.user_count();
  const int k_count = layout.antenna_count();
  ChannelMatrix h(n, k_count, arma::fill::zeros);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < k_count; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (int m = 0; m < m_count; ++m) {
        acc += surface_link(layout, params, k, m, i, phase_shifts[m], draws);
      }
      if (params.include_direct) {
        acc += direct_link(layout, params, k, i, draws);
      }
      h(i, k) = acc;
    }
  }
  return h;
}

}  // namespace omnilink
