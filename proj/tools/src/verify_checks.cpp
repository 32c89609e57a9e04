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

#include "omnilink_exp/verify_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "omnilink/analysis.hpp"
#include "omnilink/rng.hpp"
#include "omnilink_exp/scenario.hpp"

namespace omnilink::exp {
namespace {

double built_in_pattern(double theta, double epsilon) {
  return k_departure(theta, epsilon);
}

std::string format_detail(const char* fmt, double value) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

// Draws a two-user model with a guaranteed interior split optimum.
TwoUserSnr interior_instance(std::uint64_t& h) {
  h = mix64(h);
  const double ar = 3.0 * uniform_half_open(h);
  h = mix64(h);
  const double at = 3.0 * uniform_half_open(h);
  h = mix64(h);
  const double beta = std::abs(ar - at) + 0.1 + 50.0 * uniform_half_open(h);
  return {ar, at, beta};
}

CheckResult check_pattern_split(PatternFn pattern, std::uint64_t seed) {
  CheckResult result{"pattern-split-identity", false, ""};
  std::uint64_t h = hash_combine(seed, 1);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    h = mix64(h);
    const double theta = 0.499 * kPi * uniform_half_open(h);
    h = mix64(h);
    const double epsilon = 8.0 * uniform_half_open(h);
    const double total =
        pattern(theta, epsilon) + pattern(kPi - theta, epsilon);
    worst = std::max(worst, std::abs(total - k_incident(theta)));
  }
  result.passed = worst <= 1e-12;
  result.detail = format_detail("max |reflect+refract-incident| = %.2e", worst);
  return result;
}

CheckResult check_pattern_ratio(PatternFn pattern, std::uint64_t seed) {
  CheckResult result{"pattern-face-ratio", false, ""};
  std::uint64_t h = hash_combine(seed, 2);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    h = mix64(h);
    const double theta = 0.05 + 0.44 * kPi * uniform_half_open(h);
    h = mix64(h);
    const double epsilon = 0.1 + 8.0 * uniform_half_open(h);
    const double reflect = pattern(theta, epsilon);
    const double refract = pattern(kPi - theta, epsilon);
    worst = std::max(worst, std::abs(refract - epsilon * reflect));
  }
  result.passed = worst <= 1e-12;
  result.detail = format_detail("max |refract - eps*reflect| = %.2e", worst);
  return result;
}

CheckResult check_passivity(const ExperimentConfig& cfg) {
  CheckResult result{"surface-passivity", false, ""};
  const PassivityReport report = passivity_check(cfg.surface);
  result.passed = report.passes;
  result.detail =
      format_detail("max radiated power fraction = %.4e", report.max_radiated);
  return result;
}

CheckResult check_split_optimum(std::uint64_t seed) {
  CheckResult result{"split-optimum-grid", false, ""};
  std::uint64_t h = hash_combine(seed, 4);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const TwoUserSnr snr = interior_instance(h);
    const EpsilonOptimum opt = optimal_epsilon_pair(snr);
    const double at_opt = two_user_sum_rate(snr, opt.value);
    for (int g = 0; g < 200; ++g) {
      const double eps = std::pow(10.0, -3.0 + 6.0 * g / 199.0);
      worst = std::max(worst, two_user_sum_rate(snr, eps) - at_opt);
    }
    worst = std::max(worst, two_user_sum_rate(snr, 0.0) - at_opt);
  }
  result.passed = worst <= 1e-9;
  result.detail = format_detail("max grid excess over optimum = %.2e", worst);
  return result;
}

CheckResult check_derivative(std::uint64_t seed) {
  CheckResult result{"split-derivative", false, ""};
  std::uint64_t h = hash_combine(seed, 5);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const TwoUserSnr snr = interior_instance(h);
    const std::vector<SnrTerm> reflective{{snr.alpha_reflect, snr.beta}};
    const std::vector<SnrTerm> refractive{{snr.alpha_refract, snr.beta}};
    for (const double eps : {0.3, 1.0, 2.7}) {
      const double step = 1e-6 * (1.0 + eps);
      const double fd = (two_user_sum_rate(snr, eps + step) -
                         two_user_sum_rate(snr, eps - step)) /
                        (2.0 * step);
      const double analytic =
          sum_rate_epsilon_derivative(reflective, refractive, eps);
      worst = std::max(worst, std::abs(analytic - fd) /
                                  std::max(1.0, std::abs(fd)));
    }
  }
  result.passed = worst <= 1e-5;
  result.detail =
      format_detail("max relative gap to finite differences = %.2e", worst);
  return result;
}

CheckResult check_ratio_bound(std::uint64_t seed) {
  CheckResult result{"dual-face-ratio-bound", false, ""};
  std::uint64_t h = hash_combine(seed, 6);
  double lo = 2.0;
  double hi = 1.0;
  for (int t = 0; t < 500; ++t) {
    const SurfaceComparison cmp = ios_vs_irs_rates(interior_instance(h));
    lo = std::min(lo, cmp.ratio);
    hi = std::max(hi, cmp.ratio);
  }
  result.passed = lo > 1.0 && hi < 2.0;
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "ratio range [%.6f, %.6f]", lo, hi);
  result.detail = buffer;
  return result;
}

CheckResult check_equal_balance(std::uint64_t seed) {
  CheckResult result{"equal-direct-balance", false, ""};
  std::uint64_t h = hash_combine(seed, 7);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    h = mix64(h);
    const double alpha = 4.0 * uniform_half_open(h);
    h = mix64(h);
    const double beta = 0.1 + 30.0 * uniform_half_open(h);
    const EpsilonOptimum opt = optimal_epsilon_pair({alpha, alpha, beta});
    worst = std::max(worst, std::abs(opt.value - 1.0));
    if (!opt.interior) worst = 1.0;
  }
  result.passed = worst <= 1e-12;
  result.detail = format_detail("max |optimum - 1| = %.2e", worst);
  return result;
}

CheckResult check_split_monotone(std::uint64_t seed) {
  CheckResult result{"split-monotone-shift", false, ""};
  std::uint64_t h = hash_combine(seed, 8);
  bool monotone = true;
  for (int t = 0; t < 100 && monotone; ++t) {
    h = mix64(h);
    const double ar = 2.0 * uniform_half_open(h);
    h = mix64(h);
    const double beta = 5.0 + 20.0 * uniform_half_open(h);
    // A stronger refractive direct path shifts surface power away from it; a
    // stronger reflective direct path shifts surface power toward it.
    double previous = std::numeric_limits<double>::infinity();
    for (double at = 0.0; at <= 2.0; at += 0.25) {
      const double eps = optimal_epsilon_pair({ar, at, beta}).value;
      if (eps > previous + 1e-12) monotone = false;
      previous = eps;
    }
    double rising = -1.0;
    for (double ar2 = 0.0; ar2 <= 2.0; ar2 += 0.25) {
      const double eps = optimal_epsilon_pair({ar2, 1.0, beta}).value;
      if (eps < rising - 1e-12) monotone = false;
      rising = eps;
    }
  }
  result.passed = monotone;
  result.detail = monotone ? "optimum shifts with both direct SNRs"
                           : "non-monotone shift detected";
  return result;
}

CheckResult check_priority_ranking(const ExperimentConfig& cfg,
                                   std::uint64_t seed) {
  CheckResult result{"priority-ranking", false, ""};
  ChannelParams params = cfg.channel;
  params.rician_kappa = std::numeric_limits<double>::infinity();
  params.include_direct = false;

  int agreements = 0;
  const int rounds = 40;
  for (int round = 0; round < rounds; ++round) {
    ScenarioLayout layout;
    layout.surface = cfg.surface;
    layout.surface.rows = std::max(1, std::min(cfg.surface.rows, 4));
    layout.surface.cols = std::max(1, std::min(cfg.surface.cols, 4));
    layout.normal = cfg.normal;
    layout.sbs_antennas = {cfg.sbs.position};
    std::uint64_t h = hash_combine(hash_combine(seed, 9), round);
    for (int u = 0; u < 3; ++u) {
      for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t draw = hash_combine(hash_combine(h, u), attempt);
        const double radius = 1.0 + 4.0 * uniform_half_open(draw);
        const double phi = kTwoPi * uniform_half_open(mix64(draw));
        const Vec3 position{
            layout.surface.center.x + radius * std::cos(phi),
            layout.surface.center.y + radius * std::sin(phi),
            cfg.users.height};
        if (std::abs((position - layout.surface.center).dot(layout.normal)) <
            kPlaneGuard) {
          continue;
        }
        layout.mu_positions.push_back(position);
        break;
      }
    }

    // Perfectly co-phased elements give channel magnitude sum_m |amp_m|, the
    // best any phase configuration can reach for a single user.
    const FadingDraws unit = FadingDraws::unit();
    int best_by_priority = 0;
    int best_by_power = 0;
    double top_priority = -1.0;
    double top_power = -1.0;
    for (int u = 0; u < 3; ++u) {
      const double priority = priority_index(layout, params, u);
      double aligned = 0.0;
      for (int m = 0; m < layout.surface.element_count(); ++m) {
        aligned += std::abs(surface_link(layout, params, 0, m, u, 0.0, unit));
      }
      if (priority > top_priority) {
        top_priority = priority;
        best_by_priority = u;
      }
      if (aligned > top_power) {
        top_power = aligned;
        best_by_power = u;
      }
    }
    if (best_by_priority == best_by_power) ++agreements;
  }
  result.passed = agreements >= (rounds * 4) / 5;
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer),
                "top-user agreement %d/%d drops", agreements, rounds);
  result.detail = buffer;
  return result;
}

CheckResult check_mirrored_pair(const ExperimentConfig& cfg) {
  CheckResult result{"mirrored-pair", false, ""};
  ScenarioLayout layout;
  layout.surface = cfg.surface;
  layout.surface.rows = std::max(1, std::min(cfg.surface.rows, 2));
  layout.surface.cols = std::max(1, std::min(cfg.surface.cols, 2));
  layout.surface.phase_levels = std::min(cfg.surface.phase_levels, 8);
  if (!(layout.surface.epsilon > 0.0)) layout.surface.epsilon = 1.0;
  layout.normal = cfg.normal;
  layout.sbs_antennas = {cfg.sbs.position};

  const Vec3 n = layout.normal;
  const Vec3 offset{0.7, 1.1, -0.4};
  const Vec3 lateral = offset - n * offset.dot(n);
  layout.mu_positions.push_back(layout.surface.center + n * 2.0 + lateral);
  layout.mu_positions.push_back(layout.surface.center - n * 2.0 + lateral);

  const SymmetricPairReport report =
      verify_symmetric_pair(layout, cfg.channel, 0, 1);
  result.passed = report.ratio_constant && report.matches_epsilon &&
                  report.argmax_match;
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer),
                "ratio %.6g (spread %.2e), argmax %s", report.amplitude_ratio,
                report.ratio_spread, report.argmax_match ? "match" : "DIFFER");
  result.detail = buffer;
  return result;
}

CheckResult guarded(const char* name,
                    const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const ExperimentConfig& cfg,
                                          std::uint64_t seed,
                                          PatternFn pattern) {
  const PatternFn active = pattern ? pattern : built_in_pattern;
  std::vector<CheckResult> results;
  results.push_back(guarded("pattern-split-identity", [&] {
    return check_pattern_split(active, seed);
  }));
  results.push_back(guarded("pattern-face-ratio", [&] {
    return check_pattern_ratio(active, seed);
  }));
  results.push_back(
      guarded("surface-passivity", [&] { return check_passivity(cfg); }));
  results.push_back(
      guarded("split-optimum-grid", [&] { return check_split_optimum(seed); }));
  results.push_back(
      guarded("split-derivative", [&] { return check_derivative(seed); }));
  results.push_back(
      guarded("dual-face-ratio-bound", [&] { return check_ratio_bound(seed); }));
  results.push_back(
      guarded("equal-direct-balance", [&] { return check_equal_balance(seed); }));
  results.push_back(
      guarded("split-monotone-shift", [&] { return check_split_monotone(seed); }));
  results.push_back(guarded("priority-ranking", [&] {
    return check_priority_ranking(cfg, seed);
  }));
  results.push_back(
      guarded("mirrored-pair", [&] { return check_mirrored_pair(cfg); }));
  return results;
}

int print_verification(std::ostream& out,
                       const std::vector<CheckResult>& results) {
  int failures = 0;
  char line[160];
  std::snprintf(line, sizeof(line), "%-24s%-8s%s", "check", "result",
                "detail");
  out << line << '\n';
  out << std::string(70, '-') << '\n';
  for (const CheckResult& r : results) {
    if (!r.passed) ++failures;
    std::snprintf(line, sizeof(line), "%-24s%-8s%s", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.detail.c_str());
    out << line << '\n';
  }
  out << std::string(70, '-') << '\n';
  std::snprintf(line, sizeof(line), "%zu of %zu checks passed",
                results.size() - failures, results.size());
  out << line << '\n';
  return failures;
}

}  // namespace omnilink::exp
