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

#ifndef OMNILINK_EXP_EXPERIMENTS_HPP_
#define OMNILINK_EXP_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "omnilink_exp/config.hpp"
#include "omnilink_exp/scenario.hpp"

namespace omnilink::exp {

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0; // root seed of this trial
  Variant variant = Variant::kIos;
  double sum_rate = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Runs one trial end to end: drop users, draw fading, optimize phases and
/// precoder, report the achieved sum rate.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t base_seed,
                      int trial, Variant variant);

/// `run` subcommand: `trials` independent trials, one CSV row each.
/// Columns: trial,seed,variant,sum_rate,iterations,converged.
int cmd_run(const ExperimentConfig& cfg, std::uint64_t seed, int trials,
            Variant variant, const std::string& out_path);

enum class SweepKind { kSize, kBits, kEpsilon, kSplit };

/// The config knob one sweep value drives:
///  kSize:    rows = cols = value        (surface side length in elements)
///  kBits:    phase_levels = 2^value     (value = bits per element)
///  kEpsilon: surface power split
///  kSplit:   users.refractive_fraction
ExperimentConfig apply_sweep_value(const ExperimentConfig& cfg, SweepKind kind,
                                   double value);

std::vector<double> default_sweep_values(SweepKind kind);

/// Sweep driver. Every (value, trial) cell appends one line to
/// `<out_path>.progress` as soon as it finishes, so an interrupted sweep
/// rerun with the same output path skips completed cells. The aggregate CSV
/// at `out_path` has columns value,variant,mean_sum_rate,std_error,trials.
/// Returns the number of cells actually computed (not resumed).
int run_sweep(const ExperimentConfig& cfg, SweepKind kind,
              const std::vector<double>& values, std::uint64_t seed,
              int trials, Variant variant, const std::string& out_path);

/// Coverage map: one probe user per grid cell around the surface center,
/// optimized independently. Cells under the plane guard are emitted with the
/// marker rate -1. Columns: x,y,sum_rate.
int run_heatmap(const ExperimentConfig& cfg, std::uint64_t seed,
                Variant variant, double epsilon_override,
                const std::string& out_path);

}  // namespace omnilink::exp

#endif  // OMNILINK_EXP_EXPERIMENTS_HPP_
