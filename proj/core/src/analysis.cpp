#include "recnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "recnet/error.hpp"

namespace recnet {

namespace {

double interpolate(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_aligned(const ThresholdVector& theta, std::span<const PoiRecord> pois) {
  if (theta.size() != pois.size()) {
    throw ValidationError("analysis: " + std::to_string(theta.size()) +
                          " thresholds for " + std::to_string(pois.size()) + " POIs");
  }
}

void check_omega(const MultiplierScenario& s, std::size_t n) {
  for (auto v : s.omega) {
    if (v >= n) throw ValidationError("analysis: multiplier index out of range");
  }
}

}  // namespace

DescriptiveStats describe(std::span<const double> values) {
  DescriptiveStats s;
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.count = sorted.size();
  double total = 0.0;
  for (double v : sorted) total += v;
  s.mean = total / static_cast<double>(s.count);
  s.median = interpolate(sorted, 0.5);
  s.q1 = interpolate(sorted, 0.25);
  s.q3 = interpolate(sorted, 0.75);
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

SectorStats threshold_by_sector(const ThresholdVector& theta,
                                std::span<const PoiRecord> pois) {
  check_aligned(theta, pois);
  std::array<std::vector<double>, kSectorCount> grouped;
  for (std::size_t i = 0; i < pois.size(); ++i) {
    grouped[index_of(pois[i].sector)].push_back(theta[i]);
  }
  SectorStats out;
  for (auto sector : kAllSectors) {
    const auto& values = grouped[index_of(sector)];
    if (!values.empty()) out.push_back({sector, describe(values)});
  }
  return out;
}

double nearest_rank_percentile(std::span<const double> values, double p) {
  if (values.empty()) throw ValidationError("percentile of an empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("percentile must lie in (0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  // The tolerance keeps exact products such as 0.2 * 10 from rounding up.
  auto rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(sorted.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

IncomeSplit income_analysis(const ThresholdVector& theta, std::span<const PoiRecord> pois) {
  check_aligned(theta, pois);
  std::vector<double> incomes;
  incomes.reserve(pois.size());
  for (const auto& poi : pois) incomes.push_back(poi.median_income);
  if (std::set<double>(incomes.begin(), incomes.end()).size() < 2) {
    throw ValidationError("income analysis needs at least two distinct incomes");
  }
  IncomeSplit split;
  split.high_cutoff = nearest_rank_percentile(incomes, 0.8);
  split.low_cutoff = nearest_rank_percentile(incomes, 0.2);

  for (auto sector : kAllSectors) {
    std::vector<double> x, y, high, low;
    for (std::size_t i = 0; i < pois.size(); ++i) {
      if (pois[i].sector != sector) continue;
      x.push_back(pois[i].median_income);
      y.push_back(theta[i]);
      switch (split.band(pois[i].median_income)) {
        case IncomeBand::kHigh: high.push_back(theta[i]); break;
        case IncomeBand::kLow: low.push_back(theta[i]); break;
        case IncomeBand::kMiddle: break;
      }
    }
    if (x.empty()) continue;
    IncomeRegression reg;
    reg.sector = sector;
    reg.count = x.size();
    reg.high_band = describe(high);
    reg.low_band = describe(low);
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mean_x += x[i];
      mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mean_x) * (x[i] - mean_x);
      sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    const bool distinct = std::set<double>(x.begin(), x.end()).size() >= 2;
    if (distinct && sxx > 0.0) {
      reg.slope = sxy / sxx;
      reg.intercept = mean_y - *reg.slope * mean_x;
    }
    split.sectors.push_back(reg);
  }
  return split;
}

CompositionReport multiplier_composition(const std::vector<MultiplierScenario>& scenarios,
                                         std::span<const PoiRecord> pois) {
  auto shares_of = [&](auto&& indices, std::size_t total) {
    SectorShares shares{};
    SectorCounts counts{};
    for (auto i : indices) ++counts[index_of(pois[i].sector)];
    if (total == 0) return shares;
    for (std::size_t s = 0; s < kSectorCount; ++s) {
      shares[s] = 100.0 * static_cast<double>(counts[s]) / static_cast<double>(total);
    }
    return shares;
  };
  CompositionReport report;
  std::vector<std::size_t> all(pois.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  report.baseline = shares_of(all, pois.size());
  for (const auto& scenario : scenarios) {
    check_omega(scenario, pois.size());
    ScenarioComposition comp;
    comp.gamma = scenario.gamma;
    comp.k = scenario.omega.size();
    comp.shares = shares_of(scenario.omega.nodes(), scenario.omega.size());
    for (std::size_t s = 0; s < kSectorCount; ++s) {
      comp.deltas[s] = comp.shares[s] - report.baseline[s];
    }
    report.scenarios.push_back(comp);
  }
  return report;
}

std::vector<BandComposition> multiplier_by_income(
    const std::vector<MultiplierScenario>& scenarios, std::span<const PoiRecord> pois,
    const IncomeSplit& split) {
  std::vector<BandComposition> out;
  for (const auto& scenario : scenarios) {
    check_omega(scenario, pois.size());
    BandComposition comp;
    comp.gamma = scenario.gamma;
    for (auto v : scenario.omega) {
      const auto& poi = pois[v];
      switch (split.band(poi.median_income)) {
        case IncomeBand::kHigh: ++comp.high[index_of(poi.sector)]; break;
        case IncomeBand::kLow: ++comp.low[index_of(poi.sector)]; break;
        case IncomeBand::kMiddle: break;
      }
    }
    out.push_back(comp);
  }
  return out;
}

}  // namespace recnet
