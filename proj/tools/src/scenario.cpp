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

#include "omnilink_exp/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "omnilink/rng.hpp"

namespace omnilink::exp {
namespace {

constexpr std::uint64_t kPlacementStream = 0x7c3f9d1b5a8e2647ULL;
constexpr std::uint64_t kFadingStream = 0x1d4b08c6a97f3e25ULL;

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "ios") return Variant::kIos;
  if (name == "irs") return Variant::kIrs;
  if (name == "none") return Variant::kNone;
  throw std::invalid_argument("unknown variant '" + name +
                              "' (expected ios, irs, or none)");
}

const char* variant_name(Variant variant) {
  switch (variant) {
    case Variant::kIos:
      return "ios";
    case Variant::kIrs:
      return "irs";
    case Variant::kNone:
      return "none";
  }
  return "?";
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return hash_combine(base_seed, 0x9e3779b97f4a7c15ULL + trial);
}

FadingDraws trial_draws(std::uint64_t base_seed, int trial) {
  return FadingDraws::random(
      hash_combine(trial_seed(base_seed, trial), kFadingStream));
}

ScenarioLayout build_layout(const ExperimentConfig& cfg,
                            std::uint64_t base_seed, int trial,
                            Variant variant) {
  ScenarioLayout layout;
  layout.surface = cfg.surface;
  layout.normal = cfg.normal;
  if (variant == Variant::kIrs) {
    layout.surface.epsilon = 0.0;
  } else if (variant == Variant::kNone) {
    layout.surface.rows = 0;
    layout.surface.cols = 0;
  }

  for (int k = 0; k < cfg.sbs.antennas; ++k) {
    const double offset = (k - 0.5 * (cfg.sbs.antennas - 1)) * cfg.sbs.spacing;
    layout.sbs_antennas.push_back(cfg.sbs.position + cfg.sbs.axis * offset);
  }

  const int refractive_users =
      cfg.users.refractive_fraction < 0.0
          ? -1
          : static_cast<int>(std::ceil(cfg.users.refractive_fraction *
                                       cfg.users.count));
  const std::uint64_t placement =
      hash_combine(trial_seed(base_seed, trial), kPlacementStream);
  const double min_sq = cfg.users.min_radius * cfg.users.min_radius;
  const double max_sq = cfg.users.max_radius * cfg.users.max_radius;

  for (int i = 0; i < cfg.users.count; ++i) {
    const std::uint64_t user_stream = hash_combine(placement, i);
    Vec3 position;
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t h = hash_combine(user_stream, attempt);
      const double u1 = uniform_half_open(h);
      const double u2 = uniform_half_open(mix64(h));
      const double radius = std::sqrt(min_sq + u1 * (max_sq - min_sq));
      const double phi = kTwoPi * u2;
      position = {cfg.surface.center.x + radius * std::cos(phi),
                  cfg.surface.center.y + radius * std::sin(phi),
                  cfg.users.height};
      const double plane_offset =
          (position - cfg.surface.center).dot(layout.normal);
      if (std::abs(plane_offset) < kPlaneGuard) continue;

      if (refractive_users >= 0) {
        // Forced split: the first ceil(f * count) users go behind the
        // surface, the rest in front; mirror the draw when it landed on the
        // wrong face.
        const bool want_refractive = i < refractive_users;
        const bool is_refractive = plane_offset < 0.0;
        if (want_refractive != is_refractive) {
          position = position - layout.normal * (2.0 * plane_offset);
        }
      }
      break;
    }
    layout.mu_positions.push_back(position);
  }

  layout.validate();
  return layout;
}

}  // namespace omnilink::exp
