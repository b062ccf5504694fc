#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "recnet/analysis.hpp"

using namespace recnet;
using recnet::testing::poi;

namespace {

MultiplierScenario scenario_with(double gamma, std::vector<NodeIndex> omega,
                                 std::size_t order) {
  MultiplierScenario s;
  s.gamma = gamma;
  s.k = omega.size();
  s.network_order = order;
  s.omega = SeedSet(std::move(omega));
  return s;
}

const IncomeRegression& row_for(const IncomeSplit& split, Sector sector) {
  for (const auto& r : split.sectors) {
    if (r.sector == sector) return r;
  }
  throw std::runtime_error("sector missing");
}

}  // namespace

TEST_CASE("describe") {
  const std::vector<double> v{4, 1, 3, 2};
  const auto s = describe(v);
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(s.median == 2.5);
  CHECK(s.q1 == 1.75);
  CHECK(s.q3 == 3.25);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  const auto empty = describe(std::vector<double>{});
  CHECK(empty.count == 0);
  CHECK(empty.mean == 0.0);
}

TEST_CASE("threshold_by_sector") {
  std::vector<PoiRecord> pois{poi("a", Sector::kRetail), poi("b", Sector::kRetail),
                              poi("c", Sector::kRetail), poi("d", Sector::kFinance),
                              poi("e", Sector::kFinance)};
  const ThresholdVector theta({0.1, 0.3, 0.5, 0.7, 0.9});
  const auto stats = threshold_by_sector(theta, pois);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].sector == Sector::kRetail);
  CHECK(stats[0].stats.median == doctest::Approx(0.3));
  CHECK(stats[0].stats.count == 3);
  CHECK(stats[1].sector == Sector::kFinance);
  CHECK(stats[1].stats.median == doctest::Approx(0.8));
  CHECK_THROWS_AS(threshold_by_sector(ThresholdVector({0.1}), pois), ValidationError);
}

TEST_CASE("nearest_rank_percentile matches a sort-and-index recount") {
  const std::vector<double> ten{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(nearest_rank_percentile(ten, 0.2) == 2.0);
  CHECK(nearest_rank_percentile(ten, 0.8) == 8.0);
  CHECK(nearest_rank_percentile(ten, 1.0) == 10.0);
  CHECK(nearest_rank_percentile(ten, 0.01) == 1.0);
  CHECK_THROWS_AS(nearest_rank_percentile(std::vector<double>{}, 0.5), ValidationError);

  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    std::vector<double> v(n);
    for (auto& x : v) x = std::floor(rng.uniform() * 20.0);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    // Integer percent p: rank is the smallest r with 100 r >= p n.
    const auto pct = 1 + rng.below(100);
    std::size_t r = 1;
    while (100 * r < pct * n) ++r;
    CHECK(nearest_rank_percentile(v, static_cast<double>(pct) / 100.0) == sorted[r - 1]);
  }
}

TEST_CASE("income_analysis") {
  SUBCASE("recovers a planted linear relation") {
    std::vector<PoiRecord> pois;
    std::vector<double> theta;
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
      const double income = 20000.0 + 1000.0 * static_cast<double>(rng.below(80));
      pois.push_back(poi("p" + std::to_string(i), Sector::kServices, income));
      theta.push_back(0.1 + 4e-6 * income);
    }
    const auto split = income_analysis(ThresholdVector(theta), pois);
    const auto& row = row_for(split, Sector::kServices);
    REQUIRE(row.slope.has_value());
    CHECK(std::abs(*row.slope - 4e-6) <= 1e-6 * 4e-6);
    CHECK(std::abs(*row.intercept - 0.1) <= 1e-6 * 0.1);
    CHECK(row.count == 200);
  }
  SUBCASE("a sector with one distinct income has no slope") {
    std::vector<PoiRecord> pois{poi("a", Sector::kRetail, 10000), poi("b", Sector::kRetail, 10000),
                                poi("c", Sector::kMining, 20000), poi("d", Sector::kMining, 90000)};
    const auto split = income_analysis(ThresholdVector({0.1, 0.2, 0.3, 0.4}), pois);
    CHECK_FALSE(row_for(split, Sector::kRetail).slope.has_value());
    CHECK(row_for(split, Sector::kMining).slope.has_value());
  }
  SUBCASE("bands partition POIs by the cutoffs") {
    std::vector<PoiRecord> pois;
    std::vector<double> theta;
    for (int i = 1; i <= 10; ++i) {
      pois.push_back(poi("p" + std::to_string(i), i % 2 ? Sector::kRetail : Sector::kFinance,
                         1000.0 * i));
      theta.push_back(0.05 * i);
    }
    const auto split = income_analysis(ThresholdVector(theta), pois);
    CHECK(split.high_cutoff == 8000.0);
    CHECK(split.low_cutoff == 2000.0);
    std::size_t high = 0, low = 0;
    for (const auto& row : split.sectors) {
      high += row.high_band.count;
      low += row.low_band.count;
    }
    CHECK(high == 3);  // 8000, 9000, 10000
    CHECK(low == 2);   // 1000, 2000
    CHECK(split.band(5000.0) == IncomeBand::kMiddle);
  }
  SUBCASE("degenerate input") {
    std::vector<PoiRecord> pois{poi("a", Sector::kRetail, 5), poi("b", Sector::kRetail, 5)};
    CHECK_THROWS_AS(income_analysis(ThresholdVector({0.1, 0.2}), pois), ValidationError);
  }
}

TEST_CASE("multiplier_composition") {
  // Sectors: retail x2, finance, services.
  std::vector<PoiRecord> pois{poi("a", Sector::kRetail), poi("b", Sector::kRetail),
                              poi("c", Sector::kFinance), poi("d", Sector::kServices)};
  const auto report =
      multiplier_composition({scenario_with(0.5, {0, 2}, 4), scenario_with(1.0, {0, 1, 2, 3}, 4)},
                             pois);
  const auto r = index_of(Sector::kRetail), f = index_of(Sector::kFinance),
             s = index_of(Sector::kServices);
  CHECK(report.baseline[r] == 50.0);
  CHECK(report.baseline[f] == 25.0);
  CHECK(report.baseline[s] == 25.0);
  REQUIRE(report.scenarios.size() == 2);
  CHECK(report.scenarios[0].shares[r] == 50.0);
  CHECK(report.scenarios[0].shares[f] == 50.0);
  CHECK(report.scenarios[0].deltas[f] == 25.0);
  CHECK(report.scenarios[0].deltas[s] == -25.0);
  for (std::size_t i = 0; i < kSectorCount; ++i) {
    CHECK(report.scenarios[1].deltas[i] == 0.0);
  }
  double total = 0.0;
  for (double x : report.scenarios[0].shares) total += x;
  CHECK(total == doctest::Approx(100.0));

  CHECK_THROWS_AS(multiplier_composition({scenario_with(0.5, {9}, 10)}, pois), ValidationError);
}

TEST_CASE("multiplier_by_income") {
  std::vector<PoiRecord> pois;
  for (int i = 1; i <= 10; ++i) {
    pois.push_back(poi("p" + std::to_string(i), i <= 5 ? Sector::kRetail : Sector::kFinance,
                       1000.0 * i));
  }
  const auto split = income_analysis(ThresholdVector(std::vector<double>(10, 0.5)), pois);
  // Indices 0, 1 are low; 4 is middle; 8, 9 are high.
  const auto out = multiplier_by_income({scenario_with(0.5, {0, 1, 4, 8, 9}, 10)}, pois, split);
  REQUIRE(out.size() == 1);
  CHECK(out[0].gamma == 0.5);
  CHECK(out[0].low[index_of(Sector::kRetail)] == 2);
  CHECK(out[0].high[index_of(Sector::kFinance)] == 2);
  CHECK(out[0].high[index_of(Sector::kRetail)] == 0);
}
