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

#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omnilink_exp/config.hpp"
#include "omnilink_exp/experiments.hpp"
#include "omnilink_exp/scenario.hpp"
#include "omnilink_exp/verify_checks.hpp"

namespace {

using namespace omnilink::exp;

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_path;
  int trials = 10;
  std::string variant = "ios";
};

void add_common(CLI::App* cmd, CommonArgs* args, const char* default_out) {
  cmd->add_option("--config", args->config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--seed", args->seed, "base seed for drops and fading");
  args->out_path = default_out;
  cmd->add_option("--out", args->out_path, "output CSV path");
  cmd->add_option("--trials", args->trials, "trials per point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--variant", args->variant,
                  "surface treatment: ios, irs, or none");
}

int run_one_sweep(const CommonArgs& args, SweepKind kind,
                  std::vector<double> values) {
  const ExperimentConfig cfg = load_config(args.config_path);
  if (values.empty()) values = default_sweep_values(kind);
  const int computed =
      run_sweep(cfg, kind, values, args.seed, args.trials,
                parse_variant(args.variant), args.out_path);
  std::cout << "wrote " << args.out_path << " (" << computed
            << " new trials)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"downlink simulator for a dual-face reflective-refractive "
               "surface with joint precoding and discrete phase optimization"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "independent trials");
  add_common(run_cmd, &run_args, "run.csv");

  struct SweepCmd {
    const char* name;
    const char* help;
    SweepKind kind;
    const char* default_out;
    CommonArgs args;
    std::vector<double> values;
  };
  SweepCmd sweeps[] = {
      {"sweep-size", "sum rate vs surface side length (elements)",
       SweepKind::kSize, "sweep_size.csv", {}, {}},
      {"sweep-bits", "sum rate vs phase resolution (bits)", SweepKind::kBits,
       "sweep_bits.csv", {}, {}},
      {"sweep-epsilon", "sum rate vs surface power split",
       SweepKind::kEpsilon, "sweep_epsilon.csv", {}, {}},
      {"sweep-split", "sum rate vs refractive user fraction",
       SweepKind::kSplit, "sweep_split.csv", {}, {}},
  };
  for (SweepCmd& sweep : sweeps) {
    CLI::App* cmd = app.add_subcommand(sweep.name, sweep.help);
    add_common(cmd, &sweep.args, sweep.default_out);
    cmd->add_option("--values", sweep.values, "sweep points")
        ->delimiter(',');
  }

  CommonArgs heatmap_args;
  double heatmap_epsilon = std::numeric_limits<double>::quiet_NaN();
  CLI::App* heatmap_cmd =
      app.add_subcommand("heatmap", "coverage map around the surface");
  add_common(heatmap_cmd, &heatmap_args, "heatmap.csv");
  heatmap_cmd->add_option("--epsilon", heatmap_epsilon,
                          "override the surface power split");

  CommonArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "model verification battery");
  add_common(verify_cmd, &verify_args, "");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const ExperimentConfig cfg = load_config(run_args.config_path);
      const int n = cmd_run(cfg, run_args.seed, run_args.trials,
                            parse_variant(run_args.variant),
                            run_args.out_path);
      std::cout << "wrote " << run_args.out_path << " (" << n << " trials)\n";
      return 0;
    }
    for (SweepCmd& sweep : sweeps) {
      if (app.get_subcommand(sweep.name)->parsed()) {
        return run_one_sweep(sweep.args, sweep.kind, sweep.values);
      }
    }
    if (heatmap_cmd->parsed()) {
      const ExperimentConfig cfg = load_config(heatmap_args.config_path);
      const int cells = run_heatmap(cfg, heatmap_args.seed,
                                    parse_variant(heatmap_args.variant),
                                    heatmap_epsilon, heatmap_args.out_path);
      std::cout << "wrote " << heatmap_args.out_path << " (" << cells
                << " cells)\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      const ExperimentConfig cfg = load_config(verify_args.config_path);
      const int failures = print_verification(
          std::cout, run_verification(cfg, verify_args.seed));
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
