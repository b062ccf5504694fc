#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/ga.hpp"
#include "recnet/ingest.hpp"
#include "recnet/network.hpp"

namespace recnet {

// Observed week t lines up with model week t - 1: the first observed week is
// the seed state, and each later week is one more diffusion step.
constexpr int model_week(int observed_week) { return observed_week - 1; }

// Horizon needed to cover `observed_weeks` observed weeks (at least 1).
constexpr int model_horizon(int observed_weeks) {
  return observed_weeks > 1 ? observed_weeks - 1 : 1;
}

// Panel rows reordered to the network's node order (rows for POIs outside
// the network are dropped). Throws ValidationError if a node has no row.
RecoveryPanel align_panel(const DependencyNetwork& net, const RecoveryPanel& panel);

// Nodes observed recovered in week 1.
SeedSet derive_seeds(const RecoveryPanel& panel);

// Mean absolute difference of two equally sized binary matrices.
double mean_absolute_error(std::span<const std::uint8_t> observed,
                           std::span<const std::uint8_t> simulated);

// MAE over all |V| x T observed cells, comparing observed week t with trace
// week t - 1. Throws ValidationError on a dimension mismatch.
double mae(const DiffusionTrace& trace, const RecoveryPanel& panel);

// Mean MAE of `samples` i.i.d. uniform threshold vectors.
double random_baseline(const DependencyNetwork& net, const RecoveryPanel& panel,
                       const SeedSet& seeds, int samples, std::uint64_t rng_seed,
                       unsigned threads = 1);

struct CalibrationResult {
  ThresholdVector theta_star;
  double mae_star = 0.0;
  double baseline_mae = 0.0;
  ga::EvolutionHistory history;  // fitness = -MAE
  SeedSet seed_set_used;
  std::uint64_t evaluations = 0;
};

// GA over real threshold genomes minimising MAE. `panel` must already be
// aligned to `net`. The baseline uses config.baseline_samples draws.
CalibrationResult calibrate_thresholds(const DependencyNetwork& net,
                                       const RecoveryPanel& panel,
                                       const StudyConfig& config, unsigned threads = 1);

struct ThresholdReport {
  double bin_width = 0.05;
  std::vector<HistogramBin> bins;  // [low, high) covering (0, 1]
  std::size_t zero_count = 0;
};

ThresholdReport threshold_report(const ThresholdVector& theta, double bin_width = 0.05);

}  // namespace recnet
