#include "recnet/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "recnet/error.hpp"

namespace recnet {

std::size_t multiplier_budget(double gamma, std::size_t order) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ValidationError("multiplier: gamma must lie in (0, 1]");
  }
  const double x = gamma * static_cast<double>(order);
  const double base = std::floor(x);
  const double frac = x - base;
  double k = base;
  if (std::abs(frac - 0.5) <= 1e-9 * std::max(1.0, x)) {
    k = std::fmod(base, 2.0) == 0.0 ? base : base + 1.0;
  } else if (frac > 0.5) {
    k = base + 1.0;
  }
  if (k < 1.0) {
    throw ValidationError("multiplier: budget rounds to 0 for gamma " +
                          std::to_string(gamma) + " on " + std::to_string(order) +
                          " nodes");
  }
  return static_cast<std::size_t>(k);
}

std::size_t multiplier_objective(const DependencyNetwork& net, const ThresholdVector& theta,
                                 const SeedSet& omega, int horizon) {
  return final_active_count(simulate(net, omega, theta, horizon));
}

MultiplierScenario optimize_multipliers(const DependencyNetwork& net,
                                        const ThresholdVector& theta, double gamma,
                                        int horizon, const ga::GaParams& params) {
  MultiplierScenario scenario;
  scenario.gamma = gamma;
  scenario.k = multiplier_budget(gamma, net.order());
  scenario.network_order = net.order();

  auto problem = ga::subset_operators(net.order(), scenario.k);
  problem.fitness = [&](const ga::SubsetGenome& genome) {
    return static_cast<double>(multiplier_objective(net, theta, SeedSet(genome), horizon));
  };
  auto evolved = ga::evolve(problem, params);
  scenario.omega = SeedSet(std::move(evolved.best_genome));
  scenario.objective_value = multiplier_objective(net, theta, scenario.omega, horizon);
  scenario.history = std::move(evolved.history);
  return scenario;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > kMax / factor) return kMax;
    // result * factor is divisible by i: it is i * C(n - k + i, i).
    result = result * factor / i;
  }
  return result;
}

std::pair<SeedSet, std::size_t> exhaustive_optimum(const DependencyNetwork& net,
                                                   const ThresholdVector& theta,
                                                   std::size_t k, int horizon) {
  const std::size_t n = net.order();
  if (k > n) throw ValidationError("exhaustive: k exceeds network order");
  if (binomial(n, k) > kMaxExhaustiveSubsets) {
    throw ValidationError("exhaustive: C(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") exceeds the enumeration limit");
  }
  // Lexicographic enumeration of k-combinations; strict improvement keeps
  // the first (smallest) argmax.
  std::vector<NodeIndex> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = static_cast<NodeIndex>(i);
  SeedSet best;
  std::size_t best_value = 0;
  bool first = true;
  while (true) {
    SeedSet candidate(combo);
    const std::size_t value = multiplier_objective(net, theta, candidate, horizon);
    if (first || value > best_value) {
      best = std::move(candidate);
      best_value = value;
      first = false;
    }
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return {best, best_value};
}

OverlapReport overlap(const std::vector<MultiplierScenario>& scenarios) {
  if (scenarios.size() < 2) throw ValidationError("overlap: needs at least two scenarios");
  for (const auto& s : scenarios) {
    if (s.network_order != scenarios.front().network_order) {
      throw ValidationError("overlap: scenarios come from different networks");
    }
  }
  OverlapReport report;
  std::vector<NodeIndex> common = scenarios.front().omega.nodes();
  for (std::size_t i = 1; i < scenarios.size(); ++i) {
    std::vector<NodeIndex> next;
    const auto& other = scenarios[i].omega.nodes();
    std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  report.intersection = SeedSet(std::move(common));
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (std::size_t j = i + 1; j < scenarios.size(); ++j) {
      const auto& a = scenarios[i].omega.nodes();
      const auto& b = scenarios[j].omega.nodes();
      std::vector<NodeIndex> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(both));
      report.pairwise[{i, j}] = both.size();
    }
  }
  return report;
}

}  // namespace recnet
