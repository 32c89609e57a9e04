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

#ifndef OMNILINK_EXP_VERIFY_CHECKS_HPP_
#define OMNILINK_EXP_VERIFY_CHECKS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "omnilink_exp/config.hpp"

namespace omnilink::exp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail; // one-line evidence, shown in the table
};

/// Departure pattern under test: power toward angle `theta` from the normal
/// (reflective face below pi/2, refractive face above) for split `epsilon`.
/// Injectable so the test suite can prove the checks catch a broken pattern.
using PatternFn = double (*)(double theta, double epsilon);

/// Runs the full model verification battery against the configured surface:
/// pattern power partition, passivity, split optimality, derivative
/// consistency, dual-face gain bounds, ranking behavior, and the mirrored
/// two-user symmetry. Pass a non-null `pattern` to audit a replacement
/// departure pattern instead of the built-in one.
std::vector<CheckResult> run_verification(const ExperimentConfig& cfg,
                                          std::uint64_t seed,
                                          PatternFn pattern = nullptr);

/// Prints the fixed-width pass/fail table. Returns the number of failures.
int print_verification(std::ostream& out,
                       const std::vector<CheckResult>& results);

}  // namespace omnilink::exp

#endif  // OMNILINK_EXP_VERIFY_CHECKS_HPP_
