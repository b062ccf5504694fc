// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "recnet/analysis.hpp"
#include "recnet/calibration.hpp"
#include "recnet/diffusion.hpp"
#include "recnet/ga.hpp"
#include "recnet/ingest.hpp"
#include "recnet/io.hpp"
#include "recnet/multiplier.hpp"
#include "recnet/network.hpp"
#include "recnet/synth.hpp"

#ifndef RECNET_CLI_PATH
#error "RECNET_CLI_PATH must point at the recovery-net binary"
#endif

using namespace recnet;
using recnet::testing::named_network;
using recnet::testing::random_network;
using recnet::testing::random_seeds;
using recnet::testing::random_theta;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = no limit
  std::function<Outcome()> run;
};

std::vector<int> mask_of(const SeedSet& seeds, std::size_t n) {
  std::vector<int> mask(n, 0);
  for (auto s : seeds) mask[s] = 1;
  return mask;
}

bool nested(const StateVector& a, const StateVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

Outcome diffusion_oracle() {
  Rng rng(1001);
  int mismatches = 0;
  for (int g = 0; g < 200; ++g) {
    const std::size_t n = 1 + rng.below(20);
    const auto net = random_network(n, rng.uniform() * 0.5, rng);
    const auto theta = random_theta(n, rng);
    const auto seeds = random_seeds(n, rng, rng.uniform() * 0.5);
    const auto expected = oracle::threshold_states(net, theta.values(), mask_of(seeds, n), 25);
    const auto trace = simulate(net, seeds, theta, 25);
    for (int w = 0; w <= 25; ++w) {
      const auto s = trace.state(w);
      if (!std::equal(s.begin(), s.end(), expected[w].begin())) {
        ++mismatches;
        break;
      }
    }
  }
  return {mismatches == 0, std::to_string(200 - mismatches) + "/200 graphs identical"};
}

Outcome diffusion_monotone() {
  Rng rng(1002);
  int nesting = 0, dominance = 0, fixed_point = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(19);
    const auto net = random_network(n, 0.1 + 0.4 * rng.uniform(), rng);
    const auto theta = random_theta(n, rng);
    const auto small = random_seeds(n, rng, 0.2);
    auto more = small.nodes();
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.25)) more.push_back(static_cast<NodeIndex>(i));
    }
    const int horizon = static_cast<int>(n) + 1;
    const auto a = simulate(net, small, theta, horizon);
    const auto b = simulate(net, SeedSet(more), theta, horizon);
    bool ok_nest = true, ok_dom = true;
    for (int w = 0; w <= horizon; ++w) {
      if (w < horizon && !nested(a.state(w), a.state(w + 1))) ok_nest = false;
      if (!nested(a.state(w), b.state(w))) ok_dom = false;
    }
    nesting += ok_nest;
    dominance += ok_dom;
    fixed_point += a.fixed_point_week() && *a.fixed_point_week() <= static_cast<int>(n);
  }
  return {nesting == 100 && dominance == 100 && fixed_point == 100,
          "nested " + std::to_string(nesting) + "/100, dominance " + std::to_string(dominance) +
              "/100, fixed point <= |V| " + std::to_string(fixed_point) + "/100"};
}

Outcome mae_fidelity() {
  const std::vector<std::uint8_t> observed{0, 1, 1, 0, 0, 1};
  const std::vector<std::uint8_t> simulated{1, 1, 1, 0, 0, 0};
  const double example = mean_absolute_error(observed, simulated);
  bool ok = std::abs(example - 1.0 / 3.0) <= 1e-12;

  Rng rng(1003);
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    const int weeks = 1 + static_cast<int>(rng.below(18));
    const auto net = random_network(n, 0.3, rng);
    const auto trace = simulate(net, random_seeds(n, rng, 0.3), random_theta(n, rng),
                                model_horizon(weeks));
    std::vector<std::string> ids;
    for (const auto& node : net.nodes()) ids.push_back(node.poi_id);
    RecoveryPanel same(ids, weeks), flipped(ids, weeks);
    for (std::size_t i = 0; i < n; ++i) {
      for (int t = 1; t <= weeks; ++t) {
        const std::uint8_t s = trace.active(static_cast<NodeIndex>(i), model_week(t)) ? 1 : 0;
        same.set_state(i, t, s);
        flipped.set_state(i, t, static_cast<std::uint8_t>(1 - s));
      }
    }
    good += mae(trace, same) == 0.0 && mae(trace, flipped) == 1.0;
  }
  ok = ok && good == 100;
  char buf[128];
  std::snprintf(buf, sizeof buf, "example %.15f, MAE(x,x)=0 and MAE(x,not x)=1 on %d/100 panels",
                example, good);
  return {ok, buf};
}

Outcome calibration_efficacy() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthParams params;
    params.n_pois = 100;
    params.edges_per_node = 3;
    params.horizon = 18;
    params.rng_seed = seed;
    const auto s = generate_scenario(params);
    const auto net = build_network(s.pois, s.flows);
    const auto panel = align_panel(net, s.panel);
    const double truth =
        mae(simulate(net, derive_seeds(panel), s.theta_true, model_horizon(18)), panel);

    StudyConfig config;
    config.ga_population = 20;
    config.ga_iterations = 2000;
    config.baseline_samples = 500;
    config.rng_seed = seed;
    const auto r = calibrate_thresholds(net, panel, config, 0);
    const bool pass = truth == 0.0 && r.mae_star <= 0.5 * r.baseline_mae;
    ok = ok && pass;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%sseed %llu: mae* %.4f vs baseline %.4f, truth %.1f",
                  detail.empty() ? "" : "; ", static_cast<unsigned long long>(seed), r.mae_star,
                  r.baseline_mae, truth);
    detail += buf;
  }
  return {ok, detail};
}

Outcome multiplier_optimality() {
  const auto chain = named_network({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}});
  const ThresholdVector half({0.5, 0.5, 0.5});
  const auto [omega, value] = exhaustive_optimum(chain, half, 1, 18);
  ga::GaParams chain_params;
  chain_params.max_iterations = 2000;
  const auto chain_ga = optimize_multipliers(chain, half, 1.0 / 3.0, 18, chain_params);
  const bool chain_ok = omega == SeedSet({0}) && value == 3 && chain_ga.omega == SeedSet({0}) &&
                        chain_ga.objective_value == 3;

  Rng rng(1005);
  int matched = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.below(11);  // order <= 14
    const std::size_t k = 1 + rng.below(3);   // k <= 3
    const auto net = random_network(n, 0.15 + 0.25 * rng.uniform(), rng);
    const auto theta = random_theta(n, rng);
    ga::GaParams params;
    params.population_size = 20;
    params.max_iterations = 2000;
    params.rng_seed = rng();
    const double gamma = static_cast<double>(k) / static_cast<double>(n);
    const auto found = optimize_multipliers(net, theta, gamma, 18, params);
    const auto best = exhaustive_optimum(net, theta, k, 18).second;
    matched += found.k == k && found.objective_value == best;
  }
  return {chain_ok && matched >= 19,
          std::string("chain ") + (chain_ok ? "({a}, 3)" : "mismatch") + ", GA matched oracle " +
              std::to_string(matched) + "/20"};
}

Outcome budget_overlap() {
  SynthParams params;
  params.n_pois = 3405;
  params.rng_seed = 6;
  const auto s = generate_scenario(params);
  const auto net = build_network(s.pois, s.flows);
  std::vector<std::size_t> ks;
  for (double gamma : {0.03, 0.05, 0.1}) ks.push_back(multiplier_budget(gamma, net.order()));
  const bool budget_ok = ks == std::vector<std::size_t>{102, 170, 340};

  Rng rng(1006);
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MultiplierScenario> scenarios;
    std::vector<int> hits(net.order(), 0);
    for (std::size_t k : ks) {
      // Bias draws toward a small pool so intersections are non-trivial.
      auto ops = ga::subset_operators(500, k);
      MultiplierScenario sc;
      sc.k = k;
      sc.network_order = net.order();
      sc.omega = SeedSet(ops.random_genome(rng));
      for (auto v : sc.omega) ++hits[v];
      scenarios.push_back(std::move(sc));
    }
    std::vector<NodeIndex> brute;
    for (std::size_t v = 0; v < hits.size(); ++v) {
      if (hits[v] == 3) brute.push_back(static_cast<NodeIndex>(v));
    }
    agree += overlap(scenarios).intersection == SeedSet(brute);
  }
  return {budget_ok && agree == 20,
          "k = {" + std::to_string(ks[0]) + ", " + std::to_string(ks[1]) + ", " +
              std::to_string(ks[2]) + "} on " + std::to_string(net.order()) +
              " nodes, intersection agreed " + std::to_string(agree) + "/20"};
}

Outcome graph_metrics() {
  Rng rng(1007);
  int agree = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_network(1 + rng.below(15), rng.uniform(), rng);
    const auto s = graph_summary(net);
    const auto o = oracle::graph_metrics(net);
    agree += std::abs(s.density - o.density) <= 1e-12 &&
             std::abs(s.transitivity - o.transitivity) <= 1e-12 &&
             std::abs(s.avg_degree - o.avg_degree) <= 1e-12 &&
             std::abs(s.avg_strength - o.avg_strength) <= 1e-12;
  }

  auto edges_of = [](const DependencyNetwork& net) {
    std::vector<std::tuple<std::string, std::string, double>> out;
    for (const auto& e : net.edges()) {
      out.emplace_back(net.node(e.origin).poi_id, net.node(e.destination).poi_id, e.weight);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  int filter_ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_network(15, 0.3, rng);
    const double e1 = static_cast<double>(rng.below(30));
    const double e2 = e1 + static_cast<double>(rng.below(10));
    const auto f1 = filter_subnetwork(net, e1);
    const auto f2 = filter_subnetwork(net, e2);
    const auto a = edges_of(f1), b = edges_of(f2);
    filter_ok += edges_of(filter_subnetwork(f1, e1)) == a &&
                 filter_subnetwork(f1, e1).order() == f1.order() &&
                 std::includes(a.begin(), a.end(), b.begin(), b.end()) &&
                 f2.order() <= f1.order();
  }

  const auto cycle = graph_summary(
      named_network({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}}));
  const bool cycle_ok = cycle.density == 0.5 && cycle.transitivity == 1.0;
  return {agree == 50 && filter_ok == 50 && cycle_ok,
          "brute force agreed " + std::to_string(agree) + "/50, filter laws " +
              std::to_string(filter_ok) + "/50, 3-cycle " + (cycle_ok ? "(0.5, 1.0)" : "wrong")};
}

Outcome heavy_tail() {
  SynthParams params;
  params.n_pois = 5000;
  params.edges_per_node = 3;
  params.rng_seed = 8;
  const auto s = generate_scenario(params);
  const auto net = build_network(s.pois, s.flows);
  std::vector<std::size_t> degree(net.order());
  for (std::size_t i = 0; i < degree.size(); ++i) {
    degree[i] = net.in_degree(static_cast<NodeIndex>(i)) + net.out_degree(static_cast<NodeIndex>(i));
  }
  std::sort(degree.begin(), degree.end());
  const std::size_t max = degree.back();
  const double median = degree.size() % 2
                            ? static_cast<double>(degree[degree.size() / 2])
                            : 0.5 * static_cast<double>(degree[degree.size() / 2 - 1] +
                                                        degree[degree.size() / 2]);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max total degree %zu, median %.1f, ratio %.1f", max, median,
                static_cast<double>(max) / median);
  return {static_cast<double>(max) >= 10.0 * median, buf};
}

Outcome analysis_correctness() {
  Rng rng(1009);
  // Share vectors.
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.below(200);
    std::vector<PoiRecord> pois;
    for (std::size_t i = 0; i < n; ++i) {
      pois.push_back(testing::poi("p" + std::to_string(i), kAllSectors[rng.below(kSectorCount)]));
    }
    MultiplierScenario sc;
    sc.network_order = n;
    sc.omega = SeedSet(ga::subset_operators(n, 1 + rng.below(n)).random_genome(rng));
    const auto report = multiplier_composition({sc}, pois);
    const double base = std::accumulate(report.baseline.begin(), report.baseline.end(), 0.0);
    const auto& sh = report.scenarios[0].shares;
    const double scen = std::accumulate(sh.begin(), sh.end(), 0.0);
    worst = std::max({worst, std::abs(base - 100.0), std::abs(scen - 100.0)});
  }

  // Planted linear relation.
  std::vector<PoiRecord> pois;
  std::vector<double> theta;
  for (int i = 0; i < 300; ++i) {
    const double income = 15000.0 + 500.0 * static_cast<double>(rng.below(200));
    pois.push_back(testing::poi("q" + std::to_string(i), Sector::kManufacturing, income));
    theta.push_back(0.05 + 3e-6 * income);
  }
  const auto split = income_analysis(ThresholdVector(theta), pois);
  const double slope = split.sectors.at(0).slope.value_or(0.0);
  const double rel = std::abs(slope - 3e-6) / 3e-6;

  // Nearest-rank cutoffs against sort-and-index.
  int percentile_ok = 0;
  const std::vector<std::vector<double>> fixtures = {
      {10, 9, 8, 7, 6, 5, 4, 3, 2, 1}, {5}, {3, 1, 2}, {1, 1, 2, 2, 3, 3, 4}, {0.5, 0.25}};
  for (const auto& f : fixtures) {
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // Smallest rank r with r >= p * n, computed in integer percent.
    auto rank = [n](std::size_t pct) {
      std::size_t r = 1;
      while (100 * r < pct * n) ++r;
      return r;
    };
    percentile_ok += nearest_rank_percentile(f, 0.8) == sorted[rank(80) - 1] &&
                     nearest_rank_percentile(f, 0.2) == sorted[rank(20) - 1];
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max share-sum error %.1e, slope relative error %.1e, percentile fixtures %d/%zu",
                worst, rel, percentile_ok, fixtures.size());
  return {worst <= 1e-9 && rel <= 1e-6 && percentile_ok == static_cast<int>(fixtures.size()), buf};
}

bool trees_identical(const fs::path& a, const fs::path& b, std::string& why) {
  auto listing = [](const fs::path& root) {
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root).generic_string());
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto fa = listing(a), fb = listing(b);
  if (fa != fb) {
    why = "file lists differ";
    return false;
  }
  for (const auto& f : fa) {
    if (read_file(a / f) != read_file(b / f)) {
      why = f + " differs";
      return false;
    }
  }
  why = std::to_string(fa.size()) + " files byte-identical";
  return true;
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / "recnet-acceptance-pipeline";
  fs::remove_all(root);
  const std::string cli = RECNET_CLI_PATH;
  auto run_pipeline = [&](const fs::path& dir) {
    const std::string d = dir.string();
    const std::vector<std::string> steps = {
        "gen --out " + d + "/gen --param n_pois=100 --param rng_seed=2024",
        "stats --data " + d + "/gen --out " + d + "/stats --epsilon 20 --export",
        "calibrate --data " + d + "/gen --out " + d + "/calibrate",
        "optimize --data " + d + "/gen --theta " + d + "/calibrate/thresholds.csv --out " + d +
            "/optimize",
        "analyze --data " + d + "/gen --theta " + d + "/calibrate/thresholds.csv --multipliers " +
            d + "/optimize/multipliers.json --out " + d + "/analyze",
    };
    for (const auto& step : steps) {
      const std::string command = "\"" + cli + "\" " + step + " > /dev/null";
      if (std::system(command.c_str()) != 0) return "failed: recovery-net " + step;
    }
    return std::string();
  };
  for (const char* run : {"run1", "run2"}) {
    if (auto failure = run_pipeline(root / run); !failure.empty()) return {false, failure};
  }
  std::string why;
  const bool same = trees_identical(root / "run1", root / "run2", why);
  fs::remove_all(root);
  return {same, "gen, stats, calibrate, optimize, analyze: " + why};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "diffusion oracle equivalence", 10, diffusion_oracle},
      {2, "diffusion monotonicity and progressiveness", 10, diffusion_monotone},
      {3, "MAE fidelity", 0, mae_fidelity},
      {4, "calibration efficacy on planted scenarios", 300, calibration_efficacy},
      {5, "multiplier optimality at desk scale", 120, multiplier_optimality},
      {6, "budget and overlap semantics", 0, budget_overlap},
      {7, "graph metrics", 0, graph_metrics},
      {8, "synthetic heavy tail", 0, heavy_tail},
      {9, "analysis correctness", 0, analysis_correctness},
      {10, "end-to-end CLI determinism", 600, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += "; exceeded " + std::to_string(static_cast<int>(c.time_limit_s)) + " s";
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s #%d %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
