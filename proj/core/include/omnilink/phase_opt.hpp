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

#ifndef OMNILINK_PHASE_OPT_HPP_
#define OMNILINK_PHASE_OPT_HPP_

#include <armadillo>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "omnilink/channel.hpp"
#include "omnilink/geometry.hpp"
#include "omnilink/precoding.hpp"

namespace omnilink {

enum class PhaseDomain { kContinuous, kDiscrete };

/// One phase shift per surface element, each in [0, 2*pi). Discrete vectors
/// hold multiples of 2*pi / phase_levels.
struct PhaseVector {
  std::vector<double> values;
  PhaseDomain domain = PhaseDomain::kContinuous;
  int phase_levels = 0; // > 0 when domain == kDiscrete

  int size() const { return static_cast<int>(values.size()); }
  /// Throws std::invalid_argument on out-of-range or off-grid values.
  void validate() const;
};

/// Interference-free sum rate as a function of the element phases, for a
/// frozen channel realization and digital precoder:
///
///   g(psi) = sum_i log2(1 + |c_i + sum_m e^{-j psi_m} u_{m,i}|^2 / noise)
///
/// where u_{m,i} collects the precoded deterministic path through element m
/// to user i and c_i collects the precoded scattered and direct paths.
/// `evaluate` is the canonical scoring function shared by every optimizer:
/// it accumulates elements in ascending m and users in ascending i so that
/// equal phase vectors always produce bit-identical scores.
class SumRateObjective {
 public:
  SumRateObjective(const ScenarioLayout& layout, const ChannelParams& params,
                   const FadingDraws& draws, const arma::cx_mat& precoder);

  int element_count() const { return m_; }
  int user_count() const { return n_; }
  double noise_power() const { return noise_; }

  /// Canonical objective value in bit/s/Hz (no bandwidth factor).
  double evaluate(std::span<const double> phases) const;

  /// Per-user accumulated signals c_i + sum_m e^{-j psi_m} u_{m,i}.
  void accumulate(std::span<const double> phases,
                  std::vector<std::complex<double>>& out) const;
  double value_of(const std::vector<std::complex<double>>& signals) const;

  /// The user_count() coefficients of element m.
  const std::complex<double>* element_coeffs(int m) const {
    return u_.data() + static_cast<std::size_t>(m) * n_;
  }
  const std::vector<std::complex<double>>& static_coeffs() const { return c_; }

 private:
  int m_ = 0;
  int n_ = 0;
  double noise_ = 0.0;
  std::vector<std::complex<double>> u_; // m_ * n_, element-major
  std::vector<std::complex<double>> c_; // n_
  mutable std::vector<std::complex<double>> scratch_; // not thread-safe
};

struct OptimizerReport {
  PhaseVector phases;
  // Score of `phases`: the canonical objective for descent and the searches,
  // the bandwidth-scaled sum rate for the alternating loop.
  double objective = 0.0;
  int iterations = 0;     // sweeps (descent) or outer rounds (alternating)
  long nodes_visited = 0;
  long nodes_pruned = 0;
  bool converged = false;
  std::vector<double> objective_trace; // one entry per recorded iteration
};

struct SinglePhaseOptimum {
  double phase = 0.0;
  double value = 0.0;
};

/// Maximizes a 2*pi-periodic objective over one phase: dense grid scan
/// followed by golden-section refinement around the best grid point. The
/// refined point is kept only when it strictly beats the grid optimum, so
/// flat objectives resolve to the lowest grid phase.
template <typename F>
SinglePhaseOptimum optimize_single_phase(F&& objective, int grid_points = 256,
                                         int refine_iters = 30) {
  const double step = kTwoPi / grid_points;
  SinglePhaseOptimum best{0.0, objective(0.0)};
  for (int g = 1; g < grid_points; ++g) {
    const double psi = g * step;
    const double val = objective(psi);
    if (val > best.value) best = {psi, val};
  }

  // Golden-section on the bracket around the winning grid point, tracking
  // the best evaluated interior point.
  constexpr double inv_phi = 0.6180339887498949;
  double lo = best.phase - step;
  double hi = best.phase + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  SinglePhaseOptimum refined =
      f1 >= f2 ? SinglePhaseOptimum{x1, f1} : SinglePhaseOptimum{x2, f2};
  for (int it = 0; it < refine_iters; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
      if (f2 > refined.value) refined = {x2, f2};
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
      if (f1 > refined.value) refined = {x1, f1};
    }
  }
  if (refined.value > best.value) {
    double psi = std::fmod(refined.phase, kTwoPi);
    if (psi < 0.0) psi += kTwoPi;
    best = {psi, refined.value};
  }
  return best;
}

struct DescentOptions {
  double rate_threshold = 1e-4; // stop when one sweep gains less than this
  int grid_points = 256;
  int refine_iters = 30;
  int max_sweeps = 100;
};

/// Cyclic coordinate descent over the element phases, one full-circle
/// single-phase optimization per element, accepting only improvements.
/// The objective trace holds the canonical score after every sweep and is
/// non-decreasing.
OptimizerReport coordinate_descent(const SumRateObjective& objective,
                                   std::vector<double> start,
                                   const DescentOptions& options = {});

struct RoundingBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// The two discrete neighbours of each phase: the grid value at or below it
/// and the next one up, wrapping (phase_levels - 1) -> 0.
std::vector<RoundingBracket> round_candidates(std::span<const double> phases,
                                              int phase_levels);

struct BranchAndBoundOptions {
  long node_budget = 0; // 0 = unlimited; required for more than 20 elements
};

/// Exact discretization of a relaxed phase vector. Elements are fixed one
/// by one to their rounding bracket values (most influential first, higher
/// scoring child first). Each subtree is bounded by granting every still
/// open element its full per-user coefficient magnitude on top of the
/// fixed prefix, so the bound never undercuts any completion and pruning
/// cannot discard the optimum. With an exhausted node budget the incumbent
/// is returned with converged == false.
OptimizerReport branch_and_bound(const SumRateObjective& objective,
                                 std::span<const double> relaxed_phases,
                                 int phase_levels,
                                 const BranchAndBoundOptions& options = {});

struct ExhaustiveResult {
  PhaseVector phases;
  double objective = 0.0;
  std::uint64_t evaluated = 0;
};

/// Scores every combination of per-element candidates with the canonical
/// objective, keeping the lexicographically first argmax. Throws
/// std::invalid_argument when the grid exceeds `max_points`.
ExhaustiveResult exhaustive_search(
    const SumRateObjective& objective,
    const std::vector<std::vector<double>>& candidates,
    std::uint64_t max_points = std::uint64_t{1} << 20);

struct AlternatingOptions {
  double min_gain = 1e-4; // stop when an outer round gains less than this
  int max_outer = 50;
  DescentOptions descent{};
  BranchAndBoundOptions bnb{};
  double max_condition = 1e12;
};

struct AlternatingResult {
  OptimizerReport report; // discrete phases, sum-rate trace per outer round
  Precoder precoder;
  RateReport rates;
};

/// Joint design of the digital precoder and the discrete element phases:
/// zero-forcing with water-filling for fixed phases, then coordinate
/// descent plus branch-and-bound for fixed precoder, repeated until an
/// outer round improves the sum rate by less than min_gain. Updates are
/// only accepted when the re-precoded sum rate does not decrease, so the
/// trace is non-decreasing.
AlternatingResult alternating_optimize(const ScenarioLayout& layout,
                                       const ChannelParams& params,
                                       const FadingDraws& draws,
                                       double power_budget,
                                       const AlternatingOptions& options = {});

}  // namespace omnilink

#endif  // OMNILINK_PHASE_OPT_HPP_
