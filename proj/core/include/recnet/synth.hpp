#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/ingest.hpp"
#include "recnet/sector.hpp"

namespace recnet {

struct SynthParams {
  std::size_t n_pois = 100;
  std::size_t edges_per_node = 3;  // preferential-attachment m
  double weight_log_mean = 2.5;    // log-normal edge weights
  double weight_log_sd = 1.0;
  // Sector probabilities in canonical sector order; defaults are the study's
  // observed mix with construction and mining at zero.
  std::array<double, kSectorCount> sector_mix = {0.4278, 0.1020, 0.1686, 0.1354, 0.1129,
                                                 0.0289, 0.0185, 0.0059, 0.0,    0.0};
  std::size_t block_groups = 0;  // 0 = max(1, n_pois / 25)
  double income_log_mean = 10.915;  // ~ ln(55,000)
  double income_log_sd = 0.5;
  // Planted threshold = sector mean + slope * (income - reference) / 10,000
  // + N(0, noise), clipped to [0, 1].
  std::array<double, kSectorCount> theta_mean = {0.5, 0.3, 0.5, 0.4, 0.4,
                                                 0.25, 0.4, 0.55, 0.4, 0.4};
  std::array<double, kSectorCount> theta_income_slope{};
  double income_reference = 55000.0;
  double theta_noise_sd = 0.1;
  double seed_fraction = 0.1;
  int horizon = 18;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

// Flat `key = value` text like the study config. Array-valued keys take a
// comma-separated list of ten numbers in canonical sector order.
SynthParams parse_synth_params(std::istream& in);
SynthParams load_synth_params(const std::filesystem::path& path);
void write_synth_params(std::ostream& out, const SynthParams& params);
// Applies one key/value pair without re-validating the whole parameter set.
void set_synth_param(SynthParams& params, const std::string& key, const std::string& value);

struct Scenario {
  PoiTable pois;
  FlowList flows;
  ThresholdVector theta_true;  // indexed like pois
  SeedSet seeds;               // planted initial recoveries
  RecoveryPanel panel;
};

// Deterministic given params.rng_seed. Throws ValidationError when
// edges_per_node >= n_pois (except the single-node, m = 0 case) or params
// are otherwise invalid.
Scenario generate_scenario(const SynthParams& params);

// Writes pois.csv, flows.csv, recovery.csv, theta_true.csv and manifest.json.
// Returns the written paths.
std::vector<std::filesystem::path> write_scenario(const Scenario& scenario,
                                                  const SynthParams& params,
                                                  const std::filesystem::path& dir);

// Reads SynthParams back from a manifest.json written by write_scenario.
SynthParams synth_params_from_manifest(const std::filesystem::path& manifest);

}  // namespace recnet
