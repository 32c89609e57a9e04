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

#ifndef OMNILINK_EXP_CONFIG_HPP_
#define OMNILINK_EXP_CONFIG_HPP_

#include <string>

#include "omnilink/channel.hpp"
#include "omnilink/geometry.hpp"
#include "omnilink/phase_opt.hpp"

namespace omnilink::exp {

/// Uniform linear array of base-station antennas.
struct SbsSpec {
  Vec3 position{0.0, 0.0, 5.0};
  int antennas = 2;
  double spacing = 0.5;     // meters between adjacent antennas
  Vec3 axis{0.0, 1.0, 0.0}; // array direction, normalized on load
};

/// Random user drop on an annulus around the surface center.
struct UserPlacement {
  int count = 2;
  double min_radius = 1.0;
  double max_radius = 5.0;
  double height = 1.5;
  // Fraction of users forced to the refractive face (rounded up). Negative
  // keeps the natural draw, which scatters users over both faces.
  double refractive_fraction = -1.0;
};

/// Square sampling grid for coverage maps, centered on the surface.
struct HeatmapSpec {
  double extent = 6.0; // half-width in meters
  int cells = 25;      // cells per axis
};

/// Full experiment description loaded from a JSON file. Unknown keys are
/// rejected with their JSON pointer so typos cannot silently fall back to
/// defaults. Powers may be given in dBm or watts, never both.
struct ExperimentConfig {
  SurfaceSpec surface;
  Vec3 normal{-1.0, 0.0, 0.0};
  SbsSpec sbs;
  UserPlacement users;
  ChannelParams channel;
  double power_budget = 10.0; // watts
  AlternatingOptions optimizer;
  HeatmapSpec heatmap;

  void validate() const; // throws std::invalid_argument
};

double dbm_to_watts(double dbm);

/// Parses a config from JSON text. Throws std::invalid_argument with the
/// offending JSON pointer on unknown keys, wrong types, missing required
/// keys, or invalid values.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses the file at `path`.
ExperimentConfig load_config(const std::string& path);

}  // namespace omnilink::exp

#endif  // OMNILINK_EXP_CONFIG_HPP_
