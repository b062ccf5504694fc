#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/ingest.hpp"
#include "recnet/multiplier.hpp"
#include "recnet/sector.hpp"

namespace recnet {

struct DescriptiveStats {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;  // quartiles by linear interpolation between order statistics
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// All fields zero for an empty sample.
DescriptiveStats describe(std::span<const double> values);

struct SectorStatsRow {
  Sector sector;
  DescriptiveStats stats;
};

// Sectors with no POIs are omitted; rows follow the canonical sector order.
using SectorStats = std::vector<SectorStatsRow>;

// `pois[i]` labels theta[i]. Throws ValidationError on a length mismatch.
SectorStats threshold_by_sector(const ThresholdVector& theta,
                                std::span<const PoiRecord> pois);

// Nearest-rank percentile: the ceil(p * n)-th smallest value (rank >= 1).
double nearest_rank_percentile(std::span<const double> values, double p);

enum class IncomeBand { kLow, kMiddle, kHigh };

struct IncomeRegression {
  Sector sector;
  std::size_t count = 0;
  // Unset when the sector has fewer than two distinct incomes.
  std::optional<double> slope;
  std::optional<double> intercept;
  DescriptiveStats high_band;
  DescriptiveStats low_band;
};

struct IncomeSplit {
  double high_cutoff = 0.0;  // 80th percentile of POI incomes
  double low_cutoff = 0.0;   // 20th percentile
  std::vector<IncomeRegression> sectors;  // sectors with POIs only

  // High takes precedence when both cutoffs coincide.
  IncomeBand band(double income) const {
    if (income >= high_cutoff) return IncomeBand::kHigh;
    if (income <= low_cutoff) return IncomeBand::kLow;
    return IncomeBand::kMiddle;
  }
};

// Throws ValidationError on a length mismatch or fewer than two distinct
// incomes overall.
IncomeSplit income_analysis(const ThresholdVector& theta, std::span<const PoiRecord> pois);

using SectorShares = std::array<double, kSectorCount>;  // percent
using SectorCounts = std::array<std::size_t, kSectorCount>;

struct ScenarioComposition {
  double gamma = 0.0;
  std::size_t k = 0;
  SectorShares shares{};
  SectorShares deltas{};  // scenario share minus baseline share
};

struct CompositionReport {
  SectorShares baseline{};
  std::vector<ScenarioComposition> scenarios;
};

// Omega indices refer to `pois`.
CompositionReport multiplier_composition(const std::vector<MultiplierScenario>& scenarios,
                                         std::span<const PoiRecord> pois);

struct BandComposition {
  double gamma = 0.0;
  SectorCounts high{};
  SectorCounts low{};
};

std::vector<BandComposition> multiplier_by_income(
    const std::vector<MultiplierScenario>& scenarios, std::span<const PoiRecord> pois,
    const IncomeSplit& split);

}  // namespace recnet
