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

#include "omnilink_exp/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace omnilink::exp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config error at " +
                              (path.empty() ? std::string("/") : path) + ": " +
                              what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "/" + it.key(), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

Vec3 as_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected [x, y, z]");
  return {as_number(v[0], path + "/0"), as_number(v[1], path + "/1"),
          as_number(v[2], path + "/2")};
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
  const json* v = find(obj, key);
  if (!v) fail(path + "/" + key, "missing required key");
  return *v;
}

double number_or(const json& obj, const std::string& path, const char* key,
                 double fallback) {
  const json* v = find(obj, key);
  return v ? as_number(*v, path + "/" + key) : fallback;
}

int int_or(const json& obj, const std::string& path, const char* key,
           int fallback) {
  const json* v = find(obj, key);
  return v ? as_int(*v, path + "/" + key) : fallback;
}

bool bool_or(const json& obj, const std::string& path, const char* key,
             bool fallback) {
  const json* v = find(obj, key);
  return v ? as_bool(*v, path + "/" + key) : fallback;
}

Vec3 vec3_or(const json& obj, const std::string& path, const char* key,
             const Vec3& fallback) {
  const json* v = find(obj, key);
  return v ? as_vec3(*v, path + "/" + key) : fallback;
}

// Exactly one of the dBm / watt spellings must be present.
double exclusive_power(const json& obj, const std::string& path,
                       const char* dbm_key, const char* watt_key) {
  const json* dbm = find(obj, dbm_key);
  const json* watt = find(obj, watt_key);
  if (dbm && watt) {
    fail(path, std::string("give only one of ") + dbm_key + " and " +
                   watt_key);
  }
  if (!dbm && !watt) {
    fail(path,
         std::string("one of ") + dbm_key + " and " + watt_key +
             " is required");
  }
  return dbm ? dbm_to_watts(as_number(*dbm, path + "/" + dbm_key))
             : as_number(*watt, path + "/" + watt_key);
}

SurfaceSpec parse_surface(const json& node, const std::string& path,
                          Vec3* normal) {
  check_keys(node, path,
             {"center", "normal", "rows", "cols", "delta_x", "delta_y",
              "epsilon", "gamma_sq", "element_gain", "phase_levels"});
  SurfaceSpec spec;
  spec.center = as_vec3(require(node, path, "center"), path + "/center");
  spec.rows = as_int(require(node, path, "rows"), path + "/rows");
  spec.cols = as_int(require(node, path, "cols"), path + "/cols");
  spec.delta_x = number_or(node, path, "delta_x", spec.delta_x);
  spec.delta_y = number_or(node, path, "delta_y", spec.delta_y);
  spec.epsilon = number_or(node, path, "epsilon", spec.epsilon);
  spec.gamma_sq = number_or(node, path, "gamma_sq", spec.gamma_sq);
  spec.element_gain = number_or(node, path, "element_gain", spec.element_gain);
  spec.phase_levels = int_or(node, path, "phase_levels", spec.phase_levels);
  *normal = vec3_or(node, path, "normal", *normal);
  const double norm = normal->norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    fail(path + "/normal", "must have positive length");
  }
  *normal = normal->normalized();
  return spec;
}

SbsSpec parse_sbs(const json& node, const std::string& path) {
  check_keys(node, path, {"position", "antennas", "spacing", "axis"});
  SbsSpec sbs;
  sbs.position = as_vec3(require(node, path, "position"), path + "/position");
  sbs.antennas = as_int(require(node, path, "antennas"), path + "/antennas");
  sbs.spacing = number_or(node, path, "spacing", sbs.spacing);
  sbs.axis = vec3_or(node, path, "axis", sbs.axis);
  const double norm = sbs.axis.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    fail(path + "/axis", "must have positive length");
  }
  sbs.axis = sbs.axis.normalized();
  return sbs;
}

UserPlacement parse_users(const json& node, const std::string& path) {
  check_keys(node, path, {"count", "min_radius", "max_radius", "height",
                          "refractive_fraction"});
  UserPlacement users;
  users.count = as_int(require(node, path, "count"), path + "/count");
  users.min_radius = number_or(node, path, "min_radius", users.min_radius);
  users.max_radius = number_or(node, path, "max_radius", users.max_radius);
  users.height = number_or(node, path, "height", users.height);
  users.refractive_fraction =
      number_or(node, path, "refractive_fraction", users.refractive_fraction);
  return users;
}

ChannelParams parse_channel(const json& node, const std::string& path) {
  check_keys(node, path,
             {"carrier_ghz", "wavelength_m", "rician_kappa", "alpha_surface",
              "alpha_direct", "noise_power_dbm", "noise_power_w",
              "bandwidth_hz", "include_direct", "direct_pattern_cos3",
              "tx_gain", "rx_gain"});
  ChannelParams params;

  const json* carrier = find(node, "carrier_ghz");
  const json* wavelength = find(node, "wavelength_m");
  if (carrier && wavelength) {
    fail(path, "give only one of carrier_ghz and wavelength_m");
  }
  if (carrier) {
    const double ghz = as_number(*carrier, path + "/carrier_ghz");
    if (!(ghz > 0.0)) fail(path + "/carrier_ghz", "must be positive");
    params.wavelength = 299792458.0 / (ghz * 1e9);
  } else if (wavelength) {
    params.wavelength = as_number(*wavelength, path + "/wavelength_m");
  }

  const json* kappa = find(node, "rician_kappa");
  if (kappa) {
    if (kappa->is_string()) {
      if (kappa->get<std::string>() != "inf") {
        fail(path + "/rician_kappa", "expected a number or \"inf\"");
      }
      params.rician_kappa = std::numeric_limits<double>::infinity();
    } else {
      params.rician_kappa = as_number(*kappa, path + "/rician_kappa");
    }
  }

  params.alpha_surface =
      number_or(node, path, "alpha_surface", params.alpha_surface);
  params.alpha_direct =
      number_or(node, path, "alpha_direct", params.alpha_direct);
  params.noise_power =
      exclusive_power(node, path, "noise_power_dbm", "noise_power_w");
  params.bandwidth = number_or(node, path, "bandwidth_hz", params.bandwidth);
  params.include_direct =
      bool_or(node, path, "include_direct", params.include_direct);
  params.direct_pattern_cos3 = bool_or(node, path, "direct_pattern_cos3",
                                       params.direct_pattern_cos3);
  params.tx_gain = number_or(node, path, "tx_gain", params.tx_gain);
  params.rx_gain = number_or(node, path, "rx_gain", params.rx_gain);
  return params;
}

AlternatingOptions parse_optimizer(const json& node, const std::string& path) {
  check_keys(node, path,
             {"min_gain", "max_outer", "rate_threshold", "grid_points",
              "refine_iters", "max_sweeps", "node_budget", "max_condition"});
  AlternatingOptions opt;
  opt.min_gain = number_or(node, path, "min_gain", opt.min_gain);
  opt.max_outer = int_or(node, path, "max_outer", opt.max_outer);
  opt.descent.rate_threshold =
      number_or(node, path, "rate_threshold", opt.descent.rate_threshold);
  opt.descent.grid_points =
      int_or(node, path, "grid_points", opt.descent.grid_points);
  opt.descent.refine_iters =
      int_or(node, path, "refine_iters", opt.descent.refine_iters);
  opt.descent.max_sweeps =
      int_or(node, path, "max_sweeps", opt.descent.max_sweeps);
  const json* budget = find(node, "node_budget");
  if (budget) {
    const int value = as_int(*budget, path + "/node_budget");
    if (value < 0) fail(path + "/node_budget", "must be non-negative");
    opt.bnb.node_budget = static_cast<long>(value);
  }
  opt.max_condition =
      number_or(node, path, "max_condition", opt.max_condition);
  return opt;
}

HeatmapSpec parse_heatmap(const json& node, const std::string& path) {
  check_keys(node, path, {"extent", "cells"});
  HeatmapSpec heatmap;
  heatmap.extent = number_or(node, path, "extent", heatmap.extent);
  heatmap.cells = int_or(node, path, "cells", heatmap.cells);
  return heatmap;
}

}  // namespace

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

void ExperimentConfig::validate() const {
  surface.validate();
  channel.validate();
  if (sbs.antennas < 1) {
    throw std::invalid_argument("sbs.antennas must be at least 1");
  }
  if (!(sbs.spacing > 0.0)) {
    throw std::invalid_argument("sbs.spacing must be positive");
  }
  if (users.count < 1) {
    throw std::invalid_argument("users.count must be at least 1");
  }
  if (!(users.min_radius > 0.0) || !(users.max_radius >= users.min_radius)) {
    throw std::invalid_argument(
        "users radii must satisfy 0 < min_radius <= max_radius");
  }
  if (!std::isfinite(users.height)) {
    throw std::invalid_argument("users.height must be finite");
  }
  if (users.refractive_fraction > 1.0) {
    throw std::invalid_argument("users.refractive_fraction must be <= 1");
  }
  if (!(power_budget > 0.0) || !std::isfinite(power_budget)) {
    throw std::invalid_argument("power budget must be positive and finite");
  }
  if (!(optimizer.min_gain > 0.0) || optimizer.max_outer < 1) {
    throw std::invalid_argument("optimizer gains and iterations must be positive");
  }
  if (!(heatmap.extent > 0.0) || heatmap.cells < 2) {
    throw std::invalid_argument("heatmap needs a positive extent and >= 2 cells");
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  check_keys(root, "",
             {"surface", "sbs", "users", "channel", "power_budget_dbm",
              "power_budget_w", "optimizer", "heatmap"});

  ExperimentConfig cfg;
  cfg.surface =
      parse_surface(require(root, "", "surface"), "/surface", &cfg.normal);
  cfg.sbs = parse_sbs(require(root, "", "sbs"), "/sbs");
  cfg.users = parse_users(require(root, "", "users"), "/users");
  cfg.channel = parse_channel(require(root, "", "channel"), "/channel");
  cfg.power_budget =
      exclusive_power(root, "", "power_budget_dbm", "power_budget_w");
  if (const json* opt = find(root, "optimizer")) {
    cfg.optimizer = parse_optimizer(*opt, "/optimizer");
  }
  if (const json* hm = find(root, "heatmap")) {
    cfg.heatmap = parse_heatmap(*hm, "/heatmap");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace omnilink::exp
