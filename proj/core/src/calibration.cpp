#include "recnet/calibration.hpp"

#include <cmath>
#include <cstdlib>

#include "recnet/error.hpp"
#include "recnet/parallel.hpp"
#include "recnet/rng.hpp"

namespace recnet {

namespace {

// Stream key separating baseline draws from GA draws under one seed.
constexpr std::uint64_t kBaselineStream = 0xba5e11e5ULL;

}  // namespace

RecoveryPanel align_panel(const DependencyNetwork& net, const RecoveryPanel& panel) {
  std::vector<std::string> ids;
  ids.reserve(net.order());
  for (const auto& node : net.nodes()) ids.push_back(node.poi_id);
  RecoveryPanel aligned(std::move(ids), panel.horizon());
  for (std::size_t i = 0; i < net.order(); ++i) {
    const auto row = panel.find(net.node(static_cast<NodeIndex>(i)).poi_id);
    if (!row) {
      throw ValidationError("calibration: panel has no row for poi '" +
                            net.node(static_cast<NodeIndex>(i)).poi_id + "'");
    }
    for (int w = 1; w <= panel.horizon(); ++w) {
      aligned.set_state(i, w, panel.state(*row, w));
    }
  }
  return aligned;
}

SeedSet derive_seeds(const RecoveryPanel& panel) {
  std::vector<NodeIndex> seeds;
  for (std::size_t row = 0; row < panel.rows(); ++row) {
    if (panel.state(row, 1)) seeds.push_back(static_cast<NodeIndex>(row));
  }
  return SeedSet(std::move(seeds));
}

double mean_absolute_error(std::span<const std::uint8_t> observed,
                           std::span<const std::uint8_t> simulated) {
  if (observed.size() != simulated.size()) {
    throw ValidationError("mae: matrices differ in size");
  }
  if (observed.empty()) throw ValidationError("mae: empty matrices");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    diff += observed[i] != simulated[i] ? 1 : 0;
  }
  return static_cast<double>(diff) / static_cast<double>(observed.size());
}

double mae(const DiffusionTrace& trace, const RecoveryPanel& panel) {
  if (trace.order() != panel.rows()) {
    throw ValidationError("mae: trace has " + std::to_string(trace.order()) +
                          " nodes, panel has " + std::to_string(panel.rows()));
  }
  const int T = panel.horizon();
  if (trace.horizon() < model_week(T)) {
    throw ValidationError("mae: trace horizon shorter than panel");
  }
  if (panel.rows() == 0) throw ValidationError("mae: empty panel");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    const int week = trace.activation_week(static_cast<NodeIndex>(i));
    for (int t = 1; t <= T; ++t) {
      const bool sim = week != DiffusionTrace::kNever && week <= model_week(t);
      diff += (panel.state(i, t) != 0) != sim ? 1 : 0;
    }
  }
  return static_cast<double>(diff) /
         (static_cast<double>(panel.rows()) * static_cast<double>(T));
}

double random_baseline(const DependencyNetwork& net, const RecoveryPanel& panel,
                       const SeedSet& seeds, int samples, std::uint64_t rng_seed,
                       unsigned threads) {
  if (samples < 1) throw ValidationError("baseline: samples must be >= 1");
  const int horizon = model_horizon(panel.horizon());
  std::vector<double> scores(static_cast<std::size_t>(samples));
  parallel_for(scores.size(), threads, [&](std::size_t s) {
    Rng rng = Rng::stream(rng_seed, kBaselineStream, s);
    std::vector<double> theta(net.order());
    for (auto& x : theta) x = rng.uniform();
    scores[s] = mae(simulate(net, seeds, ThresholdVector(std::move(theta)), horizon), panel);
  });
  double total = 0.0;
  for (double s : scores) total += s;
  return total / static_cast<double>(samples);
}

CalibrationResult calibrate_thresholds(const DependencyNetwork& net,
                                       const RecoveryPanel& panel,
                                       const StudyConfig& config, unsigned threads) {
  config.validate();
  if (panel.rows() != net.order()) {
    throw ValidationError("calibration: panel is not aligned to the network");
  }
  CalibrationResult result;
  result.seed_set_used = derive_seeds(panel);
  const int horizon = model_horizon(panel.horizon());

  auto problem = ga::real_vector_operators(net.order());
  const SeedSet& seeds = result.seed_set_used;
  problem.fitness = [&](const ga::RealGenome& genome) {
    return -mae(simulate(net, seeds, ThresholdVector(genome), horizon), panel);
  };
  ga::GaParams params;
  params.population_size = config.ga_population;
  params.max_iterations = config.ga_iterations;
  params.rng_seed = config.rng_seed;
  params.threads = threads;
  auto evolved = ga::evolve(problem, params);

  result.theta_star = ThresholdVector(std::move(evolved.best_genome));
  result.mae_star = mae(simulate(net, seeds, result.theta_star, horizon), panel);
  result.history = std::move(evolved.history);
  result.evaluations = evolved.evaluations;
  result.baseline_mae =
      random_baseline(net, panel, seeds, config.baseline_samples, config.rng_seed, threads);
  return result;
}

ThresholdReport threshold_report(const ThresholdVector& theta, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) {
    throw ValidationError("threshold_report: bin width must lie in (0, 1]");
  }
  ThresholdReport report;
  report.bin_width = bin_width;
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  report.bins.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    report.bins[b].low = static_cast<double>(b) * bin_width;
    report.bins[b].high = std::min(1.0, static_cast<double>(b + 1) * bin_width);
  }
  for (double x : theta.values()) {
    if (x == 0.0) {
      ++report.zero_count;
      continue;
    }
    // The small offset keeps values such as 0.3 / 0.05 = 5.999... in bin 6.
    auto b = static_cast<std::size_t>(std::floor(x / bin_width + 1e-9));
    ++report.bins[std::min(b, bins - 1)].count;
  }
  return report;
}

}  // namespace recnet
