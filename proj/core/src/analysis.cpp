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

#include "omnilink/analysis.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace omnilink {

namespace {

constexpr double kRatioTol = 1e-9;

// Mirror image of p across the surface plane.
Vec3 mirrored(const Vec3& p, const Vec3& center, const Vec3& normal) {
  const double s = (p - center).dot(normal);
  return p - normal * (2.0 * s);
}

}  // namespace

void TwoUserSnr::validate() const {
  if (!(alpha_reflect >= 0.0) || !(alpha_refract >= 0.0) || !(beta >= 0.0) ||
      !std::isfinite(alpha_reflect) || !std::isfinite(alpha_refract) ||
      !std::isfinite(beta)) {
    throw std::invalid_argument("SNR terms must be finite and non-negative");
  }
}

double priority_index(const ScenarioLayout& layout,
                      const ChannelParams& params, int mu_index) {
  if (mu_index < 0 || mu_index >= layout.user_count()) {
    throw std::invalid_argument("user index out of range");
  }
  const Vec3& user = layout.mu_positions[mu_index];
  double index = 0.0;
  for (int m = 0; m < layout.surface.element_count(); ++m) {
    const Vec3 e = layout.element_position(m);
    const double theta_d = angle_from_normal(e, user, layout.normal);
    const double d = (user - e).norm();
    index += k_departure(theta_d, layout.surface.epsilon) /
             std::pow(d, params.alpha_surface);
  }
  return index;
}

double two_user_sum_rate(const TwoUserSnr& snr, double epsilon) {
  snr.validate();
  if (epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  const double reflect = snr.beta / (1.0 + epsilon);
  const double refract = snr.beta * epsilon / (1.0 + epsilon);
  return std::log2(1.0 + snr.alpha_reflect + reflect) +
         std::log2(1.0 + snr.alpha_refract + refract);
}

EpsilonOptimum optimal_epsilon_pair(const TwoUserSnr& snr) {
  snr.validate();
  const double numerator = snr.beta + snr.alpha_reflect - snr.alpha_refract;
  const double denominator = snr.beta - snr.alpha_reflect + snr.alpha_refract;
  EpsilonOptimum optimum;
  if (denominator <= 0.0) {
    // The rate keeps growing with epsilon: all surface power refracted.
    optimum.value = std::numeric_limits<double>::infinity();
    optimum.interior = false;
  } else if (numerator <= 0.0) {
    // The rate falls with epsilon from the start: all power reflected.
    optimum.value = 0.0;
    optimum.interior = false;
  } else {
    optimum.value = numerator / denominator;
    optimum.interior = true;
  }
  return optimum;
}

double sum_rate_epsilon_derivative(const std::vector<SnrTerm>& reflective,
                                   const std::vector<SnrTerm>& refractive,
                                   double epsilon) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  const double one_eps = 1.0 + epsilon;
  const double ln2 = std::log(2.0);
  double derivative = 0.0;
  for (const SnrTerm& t : reflective) {
    if (t.alpha < 0.0 || t.beta < 0.0) {
      throw std::invalid_argument("SNR terms must be non-negative");
    }
    const double rate_arg = 1.0 + t.alpha + t.beta / one_eps;
    derivative -= t.beta / (one_eps * one_eps) / (ln2 * rate_arg);
  }
  for (const SnrTerm& t : refractive) {
    if (t.alpha < 0.0 || t.beta < 0.0) {
      throw std::invalid_argument("SNR terms must be non-negative");
    }
    const double rate_arg = 1.0 + t.alpha + t.beta * epsilon / one_eps;
    derivative += t.beta / (one_eps * one_eps) / (ln2 * rate_arg);
  }
  return derivative;
}

SurfaceComparison ios_vs_irs_rates(const TwoUserSnr& snr) {
  snr.validate();
  const EpsilonOptimum optimum = optimal_epsilon_pair(snr);
  if (!optimum.interior) {
    throw std::domain_error(
        "no interior epsilon optimum: single-face comparison undefined");
  }
  SurfaceComparison cmp;
  cmp.rate_single_face = std::log2(1.0 + snr.alpha_reflect + snr.beta) +
                         std::log2(1.0 + snr.alpha_refract);
  cmp.rate_dual_face = two_user_sum_rate(snr, optimum.value);
  cmp.ratio = cmp.rate_dual_face / cmp.rate_single_face;
  return cmp;
}

SymmetricPairReport verify_symmetric_pair(const ScenarioLayout& layout,
                                          const ChannelParams& params,
                                          int reflect_index,
                                          int refract_index) {
  layout.validate();
  const int n = layout.user_count();
  if (reflect_index < 0 || reflect_index >= n || refract_index < 0 ||
      refract_index >= n || reflect_index == refract_index) {
    throw std::invalid_argument("two distinct user indices required");
  }
  const Vec3& reflect_user = layout.mu_positions[reflect_index];
  const Vec3& refract_user = layout.mu_positions[refract_index];
  if (side_of(layout, reflect_user) != Side::kReflective ||
      side_of(layout, refract_user) != Side::kRefractive) {
    throw std::invalid_argument("users must sit on opposite faces");
  }
  const Vec3 image =
      mirrored(reflect_user, layout.surface.center, layout.normal);
  if ((image - refract_user).norm() > 1e-9 * (1.0 + refract_user.norm())) {
    throw std::invalid_argument("users are not mirror images");
  }
  const int m_count = layout.surface.element_count();
  const int levels = layout.surface.phase_levels;
  if (m_count < 1) throw std::invalid_argument("surface has no elements");
  const double grid_size = std::pow(levels, m_count);
  if (grid_size > (1 << 20)) {
    throw std::invalid_argument("phase grid too large to enumerate");
  }

  // The comparison is about deterministic surface paths only.
  ChannelParams det = params;
  det.rician_kappa = std::numeric_limits<double>::infinity();
  det.include_direct = false;
  const FadingDraws draws = FadingDraws::unit();

  SymmetricPairReport report;
  const int k_count = layout.antenna_count();
  double ratio_min = std::numeric_limits<double>::max();
  double ratio_max = 0.0;
  double ratio_sum = 0.0;
  for (int k = 0; k < k_count; ++k) {
    for (int m = 0; m < m_count; ++m) {
      const double to_reflect =
          surface_path_gain(layout, det, k, m, reflect_index);
      const double to_refract =
          surface_path_gain(layout, det, k, m, refract_index);
      const double ratio = to_refract / to_reflect;
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      ratio_sum += ratio;
    }
  }
  report.amplitude_ratio = ratio_sum / (k_count * m_count);
  report.ratio_spread =
      (ratio_max - ratio_min) / std::max(report.amplitude_ratio, 1e-300);
  report.ratio_constant = report.ratio_spread <= kRatioTol;
  report.matches_epsilon =
      std::abs(report.amplitude_ratio - layout.surface.epsilon) <=
      kRatioTol * std::max(1.0, layout.surface.epsilon);

  // Single-user received power over the full discrete grid, equal-weight
  // transmission from all antennas.
  const double weight = 1.0 / std::sqrt(static_cast<double>(k_count));
  auto best_phases = [&](int user) {
    std::vector<std::complex<double>> coeff(m_count);
    for (int m = 0; m < m_count; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (int k = 0; k < k_count; ++k) {
        acc += los_component(layout, det, k, m, user, 0.0) * weight;
      }
      coeff[m] = acc;
    }
    const double step = kTwoPi / levels;
    std::vector<std::size_t> idx(m_count, 0);
    std::vector<double> phases(m_count, 0.0);
    std::vector<double> best(m_count, 0.0);
    double best_power = -1.0;
    while (true) {
      std::complex<double> acc{0.0, 0.0};
      for (int m = 0; m < m_count; ++m) {
        acc += std::polar(1.0, -phases[m]) * coeff[m];
      }
      const double power = std::norm(acc);
      if (power > best_power) {
        best_power = power;
        best = phases;
      }
      int pos = m_count - 1;
      while (pos >= 0) {
        if (++idx[pos] < static_cast<std::size_t>(levels)) {
          phases[pos] = idx[pos] * step;
          break;
        }
        idx[pos] = 0;
        phases[pos] = 0.0;
        --pos;
      }
      if (pos < 0) break;
    }
    return best;
  };

  // The received power is exactly invariant under a global rotation of all
  // phases by an alphabet step, so floating-point rounding may hand each
  // user a different member of the same degenerate family. Canonicalize by
  // rotating the first element to level zero before comparing.
  auto canonical = [&](std::vector<double> phases) {
    if (phases.empty()) return phases;
    const double step = kTwoPi / levels;
    const long base = std::lround(phases.front() / step);
    for (double& p : phases) {
      long level = std::lround(p / step) - base;
      level %= levels;
      if (level < 0) level += levels;
      p = static_cast<double>(level) * step;
    }
    return phases;
  };
  report.argmax_reflect = canonical(best_phases(reflect_index));
  report.argmax_refract = canonical(best_phases(refract_index));
  report.argmax_match = report.argmax_reflect == report.argmax_refract;
  return report;
}

}  // namespace omnilink
