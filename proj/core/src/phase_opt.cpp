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

#include "omnilink/phase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace omnilink {

namespace {

// Margin absorbing floating-point rounding of the subtree bound: a branch
// is only pruned when its bound trails the incumbent by more than this.
constexpr double kBoundSlack = 1e-9;

double wrap_phase(double psi) {
  double w = std::fmod(psi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double circular_distance(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d > kPi) d -= kTwoPi;
  if (d < -kPi) d += kTwoPi;
  return std::abs(d);
}

struct MaskedDescent {
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
};

// Cyclic single-phase optimization restricted to the `free_indices`
// elements. Mutates `phases` in place; returns the canonical score.
MaskedDescent masked_descent(const SumRateObjective& obj,
                             std::vector<double>& phases,
                             std::span<const int> free_indices,
                             const DescentOptions& options,
                             std::vector<double>* trace) {
  MaskedDescent result;
  if (free_indices.empty()) {
    result.value = obj.evaluate(phases);
    result.converged = true;
    if (trace) trace->push_back(result.value);
    return result;
  }
  const int n = obj.user_count();
  std::vector<std::complex<double>> signals;
  std::vector<std::complex<double>> base(n);
  while (result.sweeps < options.max_sweeps) {
    obj.accumulate(phases, signals); // fresh start avoids drift across sweeps
    double sweep_gain = 0.0;
    for (int idx : free_indices) {
      const std::complex<double>* u = obj.element_coeffs(idx);
      const std::complex<double> e_old = std::polar(1.0, -phases[idx]);
      for (int i = 0; i < n; ++i) base[i] = signals[i] - e_old * u[i];
      const double noise = obj.noise_power();
      auto g = [&](double psi) {
        const std::complex<double> e = std::polar(1.0, -psi);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          total += std::log2(1.0 + std::norm(base[i] + e * u[i]) / noise);
        }
        return total;
      };
      const double current = g(phases[idx]);
      const SinglePhaseOptimum best =
          optimize_single_phase(g, options.grid_points, options.refine_iters);
      if (best.value > current) {
        phases[idx] = best.phase;
        const std::complex<double> e_new = std::polar(1.0, -best.phase);
        for (int i = 0; i < n; ++i) signals[i] = base[i] + e_new * u[i];
        sweep_gain += best.value - current;
      }
    }
    ++result.sweeps;
    if (trace) trace->push_back(obj.evaluate(phases));
    if (sweep_gain < options.rate_threshold) {
      result.converged = true;
      break;
    }
  }
  result.value = obj.evaluate(phases);
  return result;
}

}  // namespace

void PhaseVector::validate() const {
  for (double v : values) {
    if (!(v >= 0.0 && v < kTwoPi)) {
      throw std::invalid_argument("phases must lie in [0, 2*pi)");
    }
  }
  if (domain == PhaseDomain::kDiscrete) {
    if (phase_levels < 2) {
      throw std::invalid_argument("discrete phases need phase_levels >= 2");
    }
    const double step = kTwoPi / phase_levels;
    for (double v : values) {
      const double idx = std::round(v / step);
      if (idx >= phase_levels || std::abs(v - idx * step) > 1e-12) {
        throw std::invalid_argument("phase off the discrete grid");
      }
    }
  }
}

SumRateObjective::SumRateObjective(const ScenarioLayout& layout,
                                   const ChannelParams& params,
                                   const FadingDraws& draws,
                                   const arma::cx_mat& precoder) {
  params.validate();
  m_ = layout.surface.element_count();
  n_ = layout.user_count();
  noise_ = params.noise_power;
  const int k_count = layout.antenna_count();
  if (precoder.n_rows != static_cast<arma::uword>(k_count) ||
      precoder.n_cols != static_cast<arma::uword>(n_)) {
    throw std::invalid_argument("precoder shape does not match the layout");
  }
  const auto [w_los, w_nlos] = rician_weights(params.rician_kappa);
  u_.assign(static_cast<std::size_t>(m_) * n_, {0.0, 0.0});
  c_.assign(n_, {0.0, 0.0});
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < k_count; ++k) {
      const std::complex<double> v_ki = precoder(k, i);
      if (params.include_direct) {
        c_[i] += direct_link(layout, params, k, i, draws) * v_ki;
      }
      for (int m = 0; m < m_; ++m) {
        u_[static_cast<std::size_t>(m) * n_ + i] +=
            w_los * los_component(layout, params, k, m, i, 0.0) * v_ki;
        if (w_nlos != 0.0) {
          c_[i] += w_nlos * nlos_component(layout, params, k, m, i, draws) *
                   v_ki;
        }
      }
    }
  }
}

void SumRateObjective::accumulate(std::span<const double> phases,
                                  std::vector<std::complex<double>>& out) const {
  if (static_cast<int>(phases.size()) != m_) {
    throw std::invalid_argument("one phase per element required");
  }
  out = c_;
  for (int m = 0; m < m_; ++m) {
    const std::complex<double> e = std::polar(1.0, -phases[m]);
    const std::complex<double>* u = element_coeffs(m);
    for (int i = 0; i < n_; ++i) out[i] += e * u[i];
  }
}

double SumRateObjective::value_of(
    const std::vector<std::complex<double>>& signals) const {
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    total += std::log2(1.0 + std::norm(signals[i]) / noise_);
  }
  return total;
}

double SumRateObjective::evaluate(std::span<const double> phases) const {
  accumulate(phases, scratch_);
  return value_of(scratch_);
}

OptimizerReport coordinate_descent(const SumRateObjective& objective,
                                   std::vector<double> start,
                                   const DescentOptions& options) {
  if (static_cast<int>(start.size()) != objective.element_count()) {
    throw std::invalid_argument("one start phase per element required");
  }
  for (double& v : start) v = wrap_phase(v);
  std::vector<int> all(start.size());
  std::iota(all.begin(), all.end(), 0);

  OptimizerReport report;
  const MaskedDescent d = masked_descent(objective, start, all, options,
                                         &report.objective_trace);
  report.phases.values = std::move(start);
  report.phases.domain = PhaseDomain::kContinuous;
  report.objective = d.value;
  report.iterations = d.sweeps;
  report.converged = d.converged;
  return report;
}

std::vector<RoundingBracket> round_candidates(std::span<const double> phases,
                                              int phase_levels) {
  if (phase_levels < 2) {
    throw std::invalid_argument("phase_levels must be at least 2");
  }
  const double step = kTwoPi / phase_levels;
  std::vector<RoundingBracket> brackets;
  brackets.reserve(phases.size());
  for (double psi : phases) {
    const double w = wrap_phase(psi);
    int l = static_cast<int>(std::floor(w / step));
    if (l >= phase_levels) l = phase_levels - 1;
    RoundingBracket b;
    b.lower = l * step;
    b.upper = l + 1 == phase_levels ? 0.0 : (l + 1) * step;
    brackets.push_back(b);
  }
  return brackets;
}

OptimizerReport branch_and_bound(const SumRateObjective& objective,
                                 std::span<const double> relaxed_phases,
                                 int phase_levels,
                                 const BranchAndBoundOptions& options) {
  const int m_count = objective.element_count();
  if (static_cast<int>(relaxed_phases.size()) != m_count) {
    throw std::invalid_argument("one relaxed phase per element required");
  }
  if (phase_levels < 2) {
    throw std::invalid_argument("phase_levels must be at least 2");
  }
  if (m_count > 20 && options.node_budget <= 0) {
    throw std::invalid_argument(
        "a node budget is required beyond 20 elements");
  }

  OptimizerReport report;
  report.phases.domain = PhaseDomain::kDiscrete;
  report.phases.phase_levels = phase_levels;
  if (m_count == 0) {
    report.objective = objective.evaluate({});
    report.converged = true;
    report.objective_trace = {report.objective};
    return report;
  }

  std::vector<double> relaxed(relaxed_phases.begin(), relaxed_phases.end());
  for (double& v : relaxed) v = wrap_phase(v);
  const std::vector<RoundingBracket> brackets =
      round_candidates(relaxed, phase_levels);

  // Incumbent: nearest grid point per element.
  std::vector<double> best(m_count);
  for (int m = 0; m < m_count; ++m) {
    const double d_lo = circular_distance(relaxed[m], brackets[m].lower);
    const double d_hi = circular_distance(relaxed[m], brackets[m].upper);
    best[m] = d_lo <= d_hi ? brackets[m].lower : brackets[m].upper;
  }
  double best_value = objective.evaluate(best);

  // Fix the elements whose bracket choice moves the relaxed score the most
  // first; this settles the decisive phases near the root.
  const int n = objective.user_count();
  std::vector<std::complex<double>> signals;
  objective.accumulate(relaxed, signals);
  std::vector<std::complex<double>> base(n);
  std::vector<std::complex<double>> shifted(n);
  auto scored = [&](const std::complex<double>* u, double psi) {
    const std::complex<double> e = std::polar(1.0, -psi);
    for (int i = 0; i < n; ++i) shifted[i] = base[i] + e * u[i];
    return objective.value_of(shifted);
  };
  std::vector<double> gap(m_count);
  for (int m = 0; m < m_count; ++m) {
    const std::complex<double>* u = objective.element_coeffs(m);
    const std::complex<double> e_old = std::polar(1.0, -relaxed[m]);
    for (int i = 0; i < n; ++i) base[i] = signals[i] - e_old * u[i];
    gap[m] = std::abs(scored(u, brackets[m].lower) -
                      scored(u, brackets[m].upper));
  }
  std::vector<int> order(m_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gap[a] > gap[b]; });

  // Per-user magnitude budget of the elements still open at each depth:
  // suffix[d * n + i] = sum over j >= d of |u_{order[j], i}|. A subtree's
  // score can never exceed the fixed-prefix signal plus this budget, so
  // the bound below is safe for any completion.
  std::vector<double> suffix((m_count + 1) * n, 0.0);
  for (int d = m_count - 1; d >= 0; --d) {
    const std::complex<double>* u = objective.element_coeffs(order[d]);
    for (int i = 0; i < n; ++i) {
      suffix[d * n + i] = suffix[(d + 1) * n + i] + std::abs(u[i]);
    }
  }
  std::vector<std::complex<double>> bound_sig(n);
  auto bound_at = [&](const std::vector<std::complex<double>>& fixed,
                      int depth) {
    for (int i = 0; i < n; ++i) {
      bound_sig[i] = {std::abs(fixed[i]) + suffix[depth * n + i], 0.0};
    }
    return objective.value_of(bound_sig);
  };

  struct Node {
    int depth = 0;
    std::vector<double> phases; // prefix fixed, remainder relaxed
    std::vector<std::complex<double>> fixed; // static plus fixed prefix
    double bound = 0.0;
  };
  std::vector<Node> stack;
  stack.push_back({0, relaxed, objective.static_coeffs(), 0.0});
  stack.back().bound = bound_at(stack.back().fixed, 0);

  long visited = 0;
  long pruned = 0;
  bool budget_hit = false;
  while (!stack.empty()) {
    if (options.node_budget > 0 && visited >= options.node_budget) {
      budget_hit = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++visited;

    if (node.depth == m_count) {
      const double value = objective.evaluate(node.phases);
      if (value > best_value) {
        best_value = value;
        best = node.phases;
      }
      continue;
    }

    if (node.bound < best_value - kBoundSlack) {
      ++pruned;
      continue;
    }

    const int element = order[node.depth];
    const std::complex<double>* u = objective.element_coeffs(element);

    Node lo{node.depth + 1, node.phases, node.fixed, 0.0};
    lo.phases[element] = brackets[element].lower;
    const std::complex<double> e_lo =
        std::polar(1.0, -brackets[element].lower);
    for (int i = 0; i < n; ++i) lo.fixed[i] += e_lo * u[i];
    lo.bound = bound_at(lo.fixed, lo.depth);

    Node hi{node.depth + 1, std::move(node.phases), std::move(node.fixed),
            0.0};
    hi.phases[element] = brackets[element].upper;
    const std::complex<double> e_hi =
        std::polar(1.0, -brackets[element].upper);
    for (int i = 0; i < n; ++i) hi.fixed[i] += e_hi * u[i];
    hi.bound = bound_at(hi.fixed, hi.depth);

    // Deeper bounding child is explored first.
    if (hi.bound > lo.bound) {
      stack.push_back(std::move(lo));
      stack.push_back(std::move(hi));
    } else {
      stack.push_back(std::move(hi));
      stack.push_back(std::move(lo));
    }
  }

  report.phases.values = std::move(best);
  report.objective = best_value;
  report.iterations = static_cast<int>(
      std::min<long>(visited, std::numeric_limits<int>::max()));
  report.nodes_visited = visited;
  report.nodes_pruned = pruned;
  report.converged = !budget_hit;
  report.objective_trace = {best_value};
  return report;
}

ExhaustiveResult exhaustive_search(
    const SumRateObjective& objective,
    const std::vector<std::vector<double>>& candidates,
    std::uint64_t max_points) {
  const int m_count = objective.element_count();
  if (static_cast<int>(candidates.size()) != m_count) {
    throw std::invalid_argument("one candidate list per element required");
  }
  std::uint64_t points = 1;
  for (const auto& c : candidates) {
    if (c.empty()) {
      throw std::invalid_argument("every element needs at least one candidate");
    }
    if (points > max_points / c.size()) {
      throw std::invalid_argument("candidate grid exceeds the search cap");
    }
    points *= c.size();
  }

  ExhaustiveResult result;
  std::vector<double> current(m_count);
  for (int m = 0; m < m_count; ++m) current[m] = candidates[m][0];
  result.phases.values = current;
  result.objective = objective.evaluate(current);
  result.evaluated = 1;

  std::vector<std::size_t> idx(m_count, 0);
  while (true) {
    // Advance the odometer, last element fastest: lexicographic order, so
    // equal scores resolve to the first combination.
    int pos = m_count - 1;
    while (pos >= 0) {
      if (++idx[pos] < candidates[pos].size()) {
        current[pos] = candidates[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      current[pos] = candidates[pos][0];
      --pos;
    }
    if (pos < 0) break;
    const double value = objective.evaluate(current);
    ++result.evaluated;
    if (value > result.objective) {
      result.objective = value;
      result.phases.values = current;
    }
  }
  return result;
}

AlternatingResult alternating_optimize(const ScenarioLayout& layout,
                                       const ChannelParams& params,
                                       const FadingDraws& draws,
                                       double power_budget,
                                       const AlternatingOptions& options) {
  layout.validate();
  params.validate();
  if (power_budget <= 0.0) {
    throw std::invalid_argument("power budget must be positive");
  }
  const int m_count = layout.surface.element_count();

  std::vector<double> phases(m_count, 0.0);
  Beamforming bf = digital_beamforming(
      compound_matrix(layout, params, phases, draws), params.noise_power,
      power_budget, params.bandwidth, options.max_condition);
  double rate = bf.rates.sum_rate;

  AlternatingResult result;
  result.report.objective_trace.push_back(rate);
  result.report.phases.domain = PhaseDomain::kDiscrete;
  result.report.phases.phase_levels = layout.surface.phase_levels;

  int rounds = 0;
  bool converged = m_count == 0; // nothing to alternate with
  while (!converged && rounds < options.max_outer) {
    ++rounds;
    const SumRateObjective objective(layout, params, draws, bf.precoder.v);
    const OptimizerReport descent =
        coordinate_descent(objective, phases, options.descent);
    const OptimizerReport search =
        branch_and_bound(objective, descent.phases.values,
                         layout.surface.phase_levels, options.bnb);
    result.report.nodes_visited += search.nodes_visited;
    result.report.nodes_pruned += search.nodes_pruned;

    std::vector<double> candidate = search.phases.values;
    if (objective.evaluate(candidate) < objective.evaluate(phases)) {
      candidate = phases; // keep the better surface setting
    }
    const Beamforming refit = digital_beamforming(
        compound_matrix(layout, params, candidate, draws), params.noise_power,
        power_budget, params.bandwidth, options.max_condition);

    double gain = 0.0;
    if (refit.rates.sum_rate >= rate) {
      gain = refit.rates.sum_rate - rate;
      phases = std::move(candidate);
      bf = refit;
      rate = bf.rates.sum_rate;
    }
    result.report.objective_trace.push_back(rate);
    if (gain < options.min_gain) converged = true;
  }

  result.report.phases.values = std::move(phases);
  result.report.objective = rate;
  result.report.iterations = rounds;
  result.report.converged = converged;
  result.precoder = std::move(bf.precoder);
  result.rates = std::move(bf.rates);
  return result;
}

}  // namespace omnilink
