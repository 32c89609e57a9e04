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

#ifndef OMNILINK_EXP_SCENARIO_HPP_
#define OMNILINK_EXP_SCENARIO_HPP_

#include <cstdint>
#include <string>

#include "omnilink/channel.hpp"
#include "omnilink_exp/config.hpp"

namespace omnilink::exp {

/// Surface treatment in a comparison run. kIos keeps the configured dual-face
/// surface, kIrs zeroes the refractive split (reflect-only surface), kNone
/// removes the surface so only the direct links remain.
enum class Variant { kIos, kIrs, kNone };

Variant parse_variant(const std::string& name); // "ios" | "irs" | "none"
const char* variant_name(Variant variant);

/// Users and probe points closer to the surface plane than this guard are
/// resampled (drops) or marked unusable (coverage maps).
constexpr double kPlaneGuard = 0.05;

/// Per-trial root seed. Depends only on the base seed and the trial index so
/// the same trial is paired (same drop, same fading) across sweep values and
/// across variants.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Fading realization for one trial, shared by every variant and sweep value.
FadingDraws trial_draws(std::uint64_t base_seed, int trial);

/// Builds the trial geometry: the configured surface and antenna array plus a
/// random user drop on the annulus. Natural drops scatter users over both
/// faces; a configured refractive fraction mirrors ceil(f * count) users onto
/// the refractive face and the rest onto the reflective face. Draws that land
/// within a small guard of the surface plane are resampled.
ScenarioLayout build_layout(const ExperimentConfig& cfg,
                            std::uint64_t base_seed, int trial,
                            Variant variant);

}  // namespace omnilink::exp

#endif  // OMNILINK_EXP_SCENARIO_HPP_
