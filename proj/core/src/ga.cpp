#include "recnet/ga.hpp"

#include <ostream>

#include "recnet/csv.hpp"

namespace recnet::ga {

void GaParams::validate() const {
  if (population_size < 2) throw ValidationError("ga: population_size must be >= 2");
  if (max_iterations < 1) throw ValidationError("ga: max_iterations must be >= 1");
  if (tournament_size < 1) throw ValidationError("ga: tournament_size must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ValidationError("ga: crossover_rate must lie in [0, 1]");
  }
  if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
    throw ValidationError("ga: mutation_rate must lie in [0, 1]");
  }
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw ValidationError("ga: elitism_count must lie in [0, population_size)");
  }
}

void write_history(std::ostream& out, const EvolutionHistory& history, bool negate) {
  const double sign = negate ? -1.0 : 1.0;
  out << "generation,best_fitness,mean_fitness\n";
  for (const auto& rec : history) {
    out << rec.generation << ',' << csv::format_double(sign * rec.best_fitness) << ','
        << csv::format_double(sign * rec.mean_fitness) << '\n';
  }
}

Problem<RealGenome> real_vector_operators(std::size_t length) {
  if (length < 1) throw ValidationError("ga: real genome length must be >= 1");
  Problem<RealGenome> p;
  p.genome_length = length;
  p.random_genome = [length](Rng& rng) {
    RealGenome g(length);
    for (auto& x : g) x = rng.uniform();
    return g;
  };
  p.crossover = [](const RealGenome& x, const RealGenome& y, Rng& rng) {
    RealGenome child(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) child[i] = rng.bernoulli(0.5) ? x[i] : y[i];
    return child;
  };
  p.mutate = [](RealGenome& g, double rate, Rng& rng) {
    for (auto& x : g) {
      if (rng.bernoulli(rate)) x = rng.uniform();
    }
  };
  p.repair = [](RealGenome&, Rng&) {};
  return p;
}

namespace {

bool is_member(const SubsetGenome& g, NodeIndex v) {
  return std::find(g.begin(), g.end(), v) != g.end();
}

// Uniform draw from {0..n-1} \ g by rejection. Requires |g| < n.
NodeIndex draw_non_member(const SubsetGenome& g, std::size_t n, Rng& rng) {
  while (true) {
    const auto v = static_cast<NodeIndex>(rng.below(n));
    if (!is_member(g, v)) return v;
  }
}

}  // namespace

Problem<SubsetGenome> subset_operators(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw ValidationError("ga: subset cardinality " + std::to_string(k) +
                          " must lie in [1, " + std::to_string(n) + "]");
  }
  Problem<SubsetGenome> p;
  p.genome_length = k;
  // Floyd's sampling of a uniform k-subset.
  p.random_genome = [n, k](Rng& rng) {
    SubsetGenome g;
    g.reserve(k);
    for (std::size_t j = n - k; j < n; ++j) {
      const auto t = static_cast<NodeIndex>(rng.below(j + 1));
      g.push_back(is_member(g, t) ? static_cast<NodeIndex>(j) : t);
    }
    std::sort(g.begin(), g.end());
    return g;
  };
  p.crossover = [k](const SubsetGenome& x, const SubsetGenome& y, Rng& rng) {
    SubsetGenome child;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(child));
    SubsetGenome pool;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(),
                                  std::back_inserter(pool));
    // Partial Fisher-Yates: the first `need` pool entries become a uniform pick.
    const std::size_t need = std::min(k - std::min(k, child.size()), pool.size());
    for (std::size_t i = 0; i < need; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      child.push_back(pool[i]);
    }
    std::sort(child.begin(), child.end());
    return child;
  };
  p.mutate = [n](SubsetGenome& g, double rate, Rng& rng) {
    if (g.size() >= n) return;
    bool changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!rng.bernoulli(rate)) continue;
      g[i] = draw_non_member(g, n, rng);
      changed = true;
    }
    if (changed) std::sort(g.begin(), g.end());
  };
  p.repair = [n, k](SubsetGenome& g, Rng& rng) {
    g.erase(std::remove_if(g.begin(), g.end(), [n](NodeIndex v) { return v >= n; }),
            g.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    while (g.size() > k) g.erase(g.begin() + static_cast<std::ptrdiff_t>(rng.below(g.size())));
    while (g.size() < k) g.push_back(draw_non_member(g, n, rng));
    std::sort(g.begin(), g.end());
  };
  return p;
}

}  // namespace recnet::ga
