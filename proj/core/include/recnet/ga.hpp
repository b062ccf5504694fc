#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/error.hpp"
#include "recnet/parallel.hpp"
#include "recnet/rng.hpp"

namespace recnet::ga {

struct GaParams {
  int population_size = 20;
  int max_iterations = 10000;  // one iteration = one full generation
  int tournament_size = 2;
  double crossover_rate = 0.9;
  std::optional<double> mutation_rate;  // per gene; unset = 1 / genome_length
  int elitism_count = 1;
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;  // fitness evaluation workers, 0 = hardware

  // Throws ValidationError when an invariant is broken.
  void validate() const;
};

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;

  bool operator==(const GenerationRecord&) const = default;
};

using EvolutionHistory = std::vector<GenerationRecord>;

void write_history(std::ostream& out, const EvolutionHistory& history, bool negate = false);

// Operator bundle for one genome encoding. Higher fitness is better.
template <class Genome>
struct Problem {
  std::size_t genome_length = 1;
  std::function<Genome(Rng&)> random_genome;
  std::function<double(const Genome&)> fitness;
  std::function<Genome(const Genome&, const Genome&, Rng&)> crossover;
  std::function<void(Genome&, double, Rng&)> mutate;
  std::function<void(Genome&, Rng&)> repair;
};

template <class Genome>
struct EvolutionResult {
  Genome best_genome;
  double best_fitness = 0.0;
  EvolutionHistory history;
  std::uint64_t evaluations = 0;
};

// Generational GA: tournament selection, crossover, mutation, repair and
// elitism. Generation 0 is the random initial population. Every random draw
// comes from a stream keyed by (rng_seed, generation, slot), and fitness
// values land in per-slot storage, so results are identical for any thread
// count.
template <class Genome>
EvolutionResult<Genome> evolve(const Problem<Genome>& problem, const GaParams& params) {
  params.validate();
  const auto pop_size = static_cast<std::size_t>(params.population_size);
  const double mutation_rate =
      params.mutation_rate.value_or(1.0 / static_cast<double>(
                                              std::max<std::size_t>(1, problem.genome_length)));

  std::vector<Genome> population(pop_size);
  std::vector<double> fitness(pop_size, 0.0);
  EvolutionResult<Genome> result;

  auto evaluate = [&](std::size_t first) {
    parallel_for(pop_size - first, params.threads, [&](std::size_t j) {
      fitness[first + j] = problem.fitness(population[first + j]);
    });
    result.evaluations += pop_size - first;
  };

  std::size_t best_slot = 0;
  auto record = [&](int generation) {
    double total = 0.0;
    best_slot = 0;
    for (std::size_t i = 0; i < pop_size; ++i) {
      total += fitness[i];
      if (fitness[i] > fitness[best_slot]) best_slot = i;
    }
    result.history.push_back(
        {generation, fitness[best_slot], total / static_cast<double>(pop_size)});
    if (generation == 0 || fitness[best_slot] > result.best_fitness) {
      result.best_fitness = fitness[best_slot];
      result.best_genome = population[best_slot];
    }
  };

  for (std::size_t i = 0; i < pop_size; ++i) {
    Rng rng = Rng::stream(params.rng_seed, 0, i);
    population[i] = problem.random_genome(rng);
    problem.repair(population[i], rng);
  }
  evaluate(0);
  record(0);

  const auto elites = static_cast<std::size_t>(params.elitism_count);
  std::vector<std::size_t> rank(pop_size);
  std::vector<Genome> next(pop_size);
  std::vector<double> next_fitness(pop_size);

  for (int gen = 1; gen <= params.max_iterations; ++gen) {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      return fitness[a] > fitness[b];
    });
    for (std::size_t e = 0; e < elites; ++e) {
      next[e] = population[rank[e]];
      next_fitness[e] = fitness[rank[e]];
    }
    for (std::size_t slot = elites; slot < pop_size; ++slot) {
      Rng rng = Rng::stream(params.rng_seed, static_cast<std::uint64_t>(gen), slot);
      auto tournament = [&]() -> const Genome& {
        std::size_t winner = rng.below(pop_size);
        for (int t = 1; t < params.tournament_size; ++t) {
          const std::size_t challenger = rng.below(pop_size);
          if (fitness[challenger] > fitness[winner]) winner = challenger;
        }
        return population[winner];
      };
      const Genome& mother = tournament();
      const Genome& father = tournament();
      Genome child = rng.bernoulli(params.crossover_rate)
                         ? problem.crossover(mother, father, rng)
                         : mother;
      problem.mutate(child, mutation_rate, rng);
      problem.repair(child, rng);
      next[slot] = std::move(child);
    }
    std::swap(population, next);
    std::copy(next_fitness.begin(), next_fitness.begin() + static_cast<std::ptrdiff_t>(elites),
              fitness.begin());
    evaluate(elites);
    record(gen);
  }
  return result;
}

using RealGenome = std::vector<double>;
using SubsetGenome = std::vector<NodeIndex>;  // sorted, distinct

// Genes i.i.d. uniform in [0, 1]; uniform gene-wise crossover; per-gene
// uniform resampling; repair is the identity.
Problem<RealGenome> real_vector_operators(std::size_t length);

// Fixed-cardinality k-subsets of {0..n-1}. Crossover keeps the parents'
// intersection and fills from their symmetric difference; mutation swaps a
// member for a random non-member; repair restores |genome| = k.
// Throws ValidationError unless 1 <= k <= n.
Problem<SubsetGenome> subset_operators(std::size_t universe_size, std::size_t cardinality);

}  // namespace recnet::ga
