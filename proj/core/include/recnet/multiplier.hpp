#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/ga.hpp"
#include "recnet/network.hpp"

namespace recnet {

// k = round(gamma * order), ties to even. Throws ValidationError if gamma is
// outside (0, 1] or k rounds to 0.
std::size_t multiplier_budget(double gamma, std::size_t order);

// Recovered count at week T when `omega` is seeded.
std::size_t multiplier_objective(const DependencyNetwork& net, const ThresholdVector& theta,
                                 const SeedSet& omega, int horizon);

struct MultiplierScenario {
  double gamma = 0.0;
  std::size_t k = 0;
  std::size_t network_order = 0;
  SeedSet omega;
  std::size_t objective_value = 0;
  ga::EvolutionHistory history;
};

// GA search over k-subsets with k = multiplier_budget(gamma, order). Uses
// params.population_size / max_iterations / rng_seed / threads.
MultiplierScenario optimize_multipliers(const DependencyNetwork& net,
                                        const ThresholdVector& theta, double gamma,
                                        int horizon, const ga::GaParams& params);

inline constexpr std::uint64_t kMaxExhaustiveSubsets = 1'000'000;

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Evaluates every k-subset; returns the lexicographically smallest argmax.
// Throws ValidationError when C(order, k) exceeds kMaxExhaustiveSubsets.
std::pair<SeedSet, std::size_t> exhaustive_optimum(const DependencyNetwork& net,
                                                   const ThresholdVector& theta,
                                                   std::size_t k, int horizon);

struct OverlapReport {
  SeedSet intersection;
  // (i, j) with i < j indexes into the scenario list.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairwise;
};

// Throws ValidationError for fewer than two scenarios or scenarios drawn
// from networks of different order.
OverlapReport overlap(const std::vector<MultiplierScenario>& scenarios);

}  // namespace recnet
