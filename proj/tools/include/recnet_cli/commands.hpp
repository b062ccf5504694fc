#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recnet/ingest.hpp"

namespace recnet::cli {

// Options shared by every command that writes a run directory.
struct RunOptions {
  std::optional<std::filesystem::path> out;  // unset = runs/<timestamp>-<cmd>-<hash>
  bool force = false;
  bool record_timings = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct GenOptions {
  std::optional<std::filesystem::path> params_file;
  std::vector<std::pair<std::string, std::string>> overrides;  // key, value
};

struct StatsOptions {
  std::filesystem::path data_dir;
  std::size_t histogram_bins = 30;
  bool export_filtered = false;
};

struct SimulateOptions {
  std::filesystem::path data_dir;
  std::filesystem::path theta_file;
  std::optional<std::filesystem::path> seeds_file;  // unset = panel week 1
};

struct CalibrateOptions {
  std::filesystem::path data_dir;
};

struct OptimizeOptions {
  std::filesystem::path data_dir;
  std::filesystem::path theta_file;
};

struct AnalyzeOptions {
  std::filesystem::path data_dir;
  std::filesystem::path theta_file;
  std::filesystem::path multipliers_file;
};

// Each returns the run directory it wrote. ValidationError signals bad
// input; anything else is a runtime failure.
std::filesystem::path cmd_gen(const GenOptions& opts, const RunOptions& run);
std::filesystem::path cmd_stats(const StatsOptions& opts, const StudyConfig& config,
                                const RunOptions& run);
std::filesystem::path cmd_simulate(const SimulateOptions& opts, const StudyConfig& config,
                                   const RunOptions& run);
std::filesystem::path cmd_calibrate(const CalibrateOptions& opts, const StudyConfig& config,
                                    const RunOptions& run);
std::filesystem::path cmd_optimize(const OptimizeOptions& opts, const StudyConfig& config,
                                   const RunOptions& run);
std::filesystem::path cmd_analyze(const AnalyzeOptions& opts, const StudyConfig& config,
                                  const RunOptions& run);

}  // namespace recnet::cli
