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

#include "omnilink_exp/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "omnilink/phase_opt.hpp"
#include "omnilink/rng.hpp"

namespace omnilink::exp {
namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  return out;
}

std::string progress_key(double value, int trial, Variant variant) {
  return format_double(value) + "," + std::to_string(trial) + "," +
         variant_name(variant);
}

struct ProgressLine {
  double value = 0.0;
  TrialRecord record;
};

// Progress lines mirror the full trial record so an aggregate can be rebuilt
// from resumed and fresh cells alike. Malformed lines (for example a line cut
// short by a crash) are skipped.
bool parse_progress_line(const std::string& line, ProgressLine* out) {
  std::istringstream in(line);
  std::string value, trial, seed, variant, sum_rate, iterations, converged;
  if (!std::getline(in, value, ',') || !std::getline(in, trial, ',') ||
      !std::getline(in, seed, ',') || !std::getline(in, variant, ',') ||
      !std::getline(in, sum_rate, ',') ||
      !std::getline(in, iterations, ',') ||
      !std::getline(in, converged)) {
    return false;
  }
  try {
    out->value = std::stod(value);
    out->record.trial = std::stoi(trial);
    out->record.seed = std::stoull(seed);
    out->record.variant = parse_variant(variant);
    out->record.sum_rate = std::stod(sum_rate);
    out->record.iterations = std::stoi(iterations);
    out->record.converged = converged == "1";
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

std::string progress_line(double value, const TrialRecord& r) {
  return format_double(value) + "," + std::to_string(r.trial) + "," +
         std::to_string(r.seed) + "," + variant_name(r.variant) + "," +
         format_double(r.sum_rate) + "," + std::to_string(r.iterations) +
         "," + (r.converged ? "1" : "0");
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t base_seed,
                      int trial, Variant variant) {
  const ScenarioLayout layout = build_layout(cfg, base_seed, trial, variant);
  const FadingDraws draws = trial_draws(base_seed, trial);
  const AlternatingResult result = alternating_optimize(
      layout, cfg.channel, draws, cfg.power_budget, cfg.optimizer);
  TrialRecord record;
  record.trial = trial;
  record.seed = trial_seed(base_seed, trial);
  record.variant = variant;
  record.sum_rate = result.rates.sum_rate;
  record.iterations = result.report.iterations;
  record.converged = result.report.converged;
  return record;
}

int cmd_run(const ExperimentConfig& cfg, std::uint64_t seed, int trials,
            Variant variant, const std::string& out_path) {
  std::ofstream out = open_out(out_path);
  out << "trial,seed,variant,sum_rate,iterations,converged\n" << std::flush;
  for (int trial = 0; trial < trials; ++trial) {
    const TrialRecord r = run_trial(cfg, seed, trial, variant);
    out << r.trial << ',' << r.seed << ',' << variant_name(r.variant) << ','
        << format_double(r.sum_rate) << ',' << r.iterations << ','
        << (r.converged ? 1 : 0) << '\n'
        << std::flush;
  }
  return trials;
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg, SweepKind kind,
                                   double value) {
  ExperimentConfig swept = cfg;
  switch (kind) {
    case SweepKind::kSize: {
      const int side = static_cast<int>(std::lround(value));
      if (side < 0 || side != value) {
        throw std::invalid_argument(
            "sweep-size values must be non-negative integers");
      }
      swept.surface.rows = side;
      swept.surface.cols = side;
      break;
    }
    case SweepKind::kBits: {
      const int bits = static_cast<int>(std::lround(value));
      if (bits < 1 || bits > 20 || bits != value) {
        throw std::invalid_argument(
            "sweep-bits values must be integers in [1, 20]");
      }
      swept.surface.phase_levels = 1 << bits;
      break;
    }
    case SweepKind::kEpsilon: {
      if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(
            "sweep-epsilon values must be non-negative");
      }
      swept.surface.epsilon = value;
      break;
    }
    case SweepKind::kSplit: {
      if (!(value >= 0.0) || value > 1.0) {
        throw std::invalid_argument("sweep-split values must be in [0, 1]");
      }
      swept.users.refractive_fraction = value;
      break;
    }
  }
  swept.validate();
  return swept;
}

std::vector<double> default_sweep_values(SweepKind kind) {
  switch (kind) {
    case SweepKind::kSize:
      return {4.0, 8.0, 12.0};
    case SweepKind::kBits:
      return {1.0, 2.0, 3.0, 4.0};
    case SweepKind::kEpsilon:
      return {0.25, 0.5, 1.0, 2.0, 4.0};
    case SweepKind::kSplit:
      return {0.0, 0.25, 0.5, 0.75, 1.0};
  }
  return {};
}

int run_sweep(const ExperimentConfig& cfg, SweepKind kind,
              const std::vector<double>& values, std::uint64_t seed,
              int trials, Variant variant, const std::string& out_path) {
  if (values.empty()) {
    throw std::invalid_argument("sweep needs at least one value");
  }
  const std::string progress_path = out_path + ".progress";

  // Load cells finished by an earlier interrupted invocation.
  std::set<std::string> done;
  std::vector<ProgressLine> records;
  {
    std::ifstream in(progress_path);
    std::string line;
    while (in && std::getline(in, line)) {
      ProgressLine parsed;
      if (!parse_progress_line(line, &parsed)) continue;
      const std::string key =
          progress_key(parsed.value, parsed.record.trial,
                       parsed.record.variant);
      if (done.insert(key).second) records.push_back(parsed);
    }
  }

  std::ofstream progress(progress_path, std::ios::app);
  if (!progress) {
    throw std::runtime_error("cannot open progress file: " + progress_path);
  }

  int computed = 0;
  for (const double value : values) {
    const ExperimentConfig swept = apply_sweep_value(cfg, kind, value);
    for (int trial = 0; trial < trials; ++trial) {
      if (done.count(progress_key(value, trial, variant)) > 0) continue;
      const TrialRecord r = run_trial(swept, seed, trial, variant);
      records.push_back({value, r});
      progress << progress_line(value, r) << '\n' << std::flush;
      ++computed;
    }
  }

  std::ofstream out = open_out(out_path);
  out << "value,variant,mean_sum_rate,std_error,trials\n";
  for (const double value : values) {
    double sum = 0.0;
    double sum_sq = 0.0;
    int n = 0;
    for (const ProgressLine& r : records) {
      if (r.record.variant != variant || r.value != value) continue;
      if (r.record.trial >= trials) continue;
      sum += r.record.sum_rate;
      sum_sq += r.record.sum_rate * r.record.sum_rate;
      ++n;
    }
    const double mean = n > 0 ? sum / n : 0.0;
    const double variance =
        n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    const double std_error = n > 1 ? std::sqrt(variance / n) : 0.0;
    out << format_double(value) << ',' << variant_name(variant) << ','
        << format_double(mean) << ',' << format_double(std_error) << ',' << n
        << '\n';
  }
  return computed;
}

int run_heatmap(const ExperimentConfig& cfg, std::uint64_t seed,
                Variant variant, double epsilon_override,
                const std::string& out_path) {
  ExperimentConfig probe_cfg = cfg;
  if (!std::isnan(epsilon_override)) {
    if (!(epsilon_override >= 0.0)) {
      throw std::invalid_argument("epsilon override must be non-negative");
    }
    probe_cfg.surface.epsilon = epsilon_override;
    probe_cfg.validate();
  }

  std::ofstream out = open_out(out_path);
  out << "x,y,sum_rate\n";

  const int cells = probe_cfg.heatmap.cells;
  const double extent = probe_cfg.heatmap.extent;
  const Vec3 center = probe_cfg.surface.center;
  int cell_index = 0;
  for (int ix = 0; ix < cells; ++ix) {
    const double x = center.x - extent + 2.0 * extent * ix / (cells - 1);
    for (int iy = 0; iy < cells; ++iy, ++cell_index) {
      const double y = center.y - extent + 2.0 * extent * iy / (cells - 1);
      const Vec3 position{x, y, probe_cfg.users.height};

      ScenarioLayout layout;
      layout.surface = probe_cfg.surface;
      layout.normal = probe_cfg.normal;
      if (variant == Variant::kIrs) {
        layout.surface.epsilon = 0.0;
      } else if (variant == Variant::kNone) {
        layout.surface.rows = 0;
        layout.surface.cols = 0;
      }
      for (int k = 0; k < probe_cfg.sbs.antennas; ++k) {
        const double offset =
            (k - 0.5 * (probe_cfg.sbs.antennas - 1)) * probe_cfg.sbs.spacing;
        layout.sbs_antennas.push_back(probe_cfg.sbs.position +
                                      probe_cfg.sbs.axis * offset);
      }

      if (std::abs((position - center).dot(layout.normal)) < kPlaneGuard) {
        out << format_double(x) << ',' << format_double(y) << ",-1\n";
        continue;
      }
      layout.mu_positions.push_back(position);
      layout.validate();

      const FadingDraws draws = trial_draws(seed, cell_index);
      const AlternatingResult result =
          alternating_optimize(layout, probe_cfg.channel, draws,
                               probe_cfg.power_budget, probe_cfg.optimizer);
      out << format_double(x) << ',' << format_double(y) << ','
          << format_double(result.rates.sum_rate) << '\n'
          << std::flush;
    }
  }
  return cells * cells;
}

}  // namespace omnilink::exp
