#include "recnet_cli/commands.hpp"

#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "recnet/analysis.hpp"
#include "recnet/calibration.hpp"
#include "recnet/csv.hpp"
#include "recnet/error.hpp"
#include "recnet/io.hpp"
#include "recnet/multiplier.hpp"
#include "recnet/network.hpp"
#include "recnet/synth.hpp"
#include "recnet_cli/run.hpp"

#ifndef RECNET_VERSION
#define RECNET_VERSION "0.0.0"
#endif

namespace recnet::cli {

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string config_text(const StudyConfig& config) {
  std::ostringstream out;
  write_study_config(out, config);
  return out.str();
}

Json config_json(const StudyConfig& c) {
  return {{"epsilon", c.epsilon},
          {"ga_population", c.ga_population},
          {"ga_iterations", c.ga_iterations},
          {"horizon", c.horizon},
          {"gamma_list", c.gamma_list},
          {"rng_seed", c.rng_seed},
          {"baseline_samples", c.baseline_samples}};
}

Json manifest_body(const std::string& command, Json config, Json parameters) {
  return {{"tool", "recovery-net"},
          {"version", RECNET_VERSION},
          {"command", command},
          {"config", std::move(config)},
          {"parameters", std::move(parameters)}};
}

fs::path resolve_out(const RunOptions& run, const std::string& command,
                     const std::string& hashed_text) {
  return run.out ? *run.out : default_run_dir(command, hashed_text);
}

// Loads an input, records its digest and prefixes parse failures with the
// file name.
template <class Fn>
auto load_input(RunDirectory& run, const std::string& role, const fs::path& path, Fn&& fn) {
  run.add_input(role, path);
  try {
    return fn(path);
  } catch (const ValidationError& e) {
    throw ValidationError("ingest: " + path.filename().string() + ": " + e.what());
  }
}

struct LoadedNetwork {
  DependencyNetwork net;
  std::optional<RecoveryPanel> panel;  // aligned to net when loaded
};

LoadedNetwork load_network(RunDirectory& run, const fs::path& data_dir, const StudyConfig& config,
                           bool with_panel) {
  const auto pois = load_input(run, "pois", data_dir / "pois.csv",
                               [](const fs::path& p) { return load_pois(p); });
  const auto flows = load_input(run, "flows", data_dir / "flows.csv",
                                [](const fs::path& p) { return load_flows(p); });
  std::optional<RecoveryPanel> panel;
  if (with_panel) {
    panel = load_input(run, "recovery", data_dir / "recovery.csv",
                       [&](const fs::path& p) { return load_recovery(p, config.horizon); });
  }
  const auto report = validate_dataset(pois, flows, panel ? &*panel : nullptr);
  if (!report.ok()) throw ValidationError("ingest: " + report.describe());

  LoadedNetwork loaded{filter_subnetwork(build_network(pois, flows), config.epsilon), {}};
  if (loaded.net.order() == 0) {
    throw ValidationError("network: no edges exceed epsilon " +
                          csv::format_double(config.epsilon));
  }
  if (panel) loaded.panel = align_panel(loaded.net, *panel);
  return loaded;
}

ThresholdVector align_theta(const DependencyNetwork& net, const ThresholdTable& table) {
  std::unordered_map<std::string, double> by_id;
  for (const auto& [id, theta] : table) {
    if (!net.find(id)) throw ValidationError("theta: poi '" + id + "' is not in the network");
    by_id.emplace(id, theta);
  }
  std::vector<double> theta(net.order());
  for (std::size_t i = 0; i < net.order(); ++i) {
    const auto& id = net.node(static_cast<NodeIndex>(i)).poi_id;
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw ValidationError("theta: no threshold for poi '" + id + "'");
    theta[i] = it->second;
  }
  return ThresholdVector(std::move(theta));
}

ThresholdVector load_theta(RunDirectory& run, const fs::path& path,
                           const DependencyNetwork& net) {
  const auto table =
      load_input(run, "theta", path, [](const fs::path& p) { return load_thresholds(p); });
  return align_theta(net, table);
}

Json poi_ids(const DependencyNetwork& net, const SeedSet& set) {
  Json ids = Json::array();
  for (auto v : set) ids.push_back(net.node(v).poi_id);
  return ids;
}

std::string histogram_csv(const LogHistogram& h) {
  std::ostringstream out;
  out << "bin_low,bin_high,count\n";
  for (const auto& b : h.bins) {
    out << csv::format_double(b.low) << ',' << csv::format_double(b.high) << ',' << b.count
        << '\n';
  }
  return out.str();
}

std::string history_csv(const ga::EvolutionHistory& history, double sign,
                        const std::string& quantity) {
  std::ostringstream out;
  out << "generation,best_" << quantity << ",mean_" << quantity << '\n';
  for (const auto& rec : history) {
    out << rec.generation << ',' << csv::format_double(sign * rec.best_fitness) << ','
        << csv::format_double(sign * rec.mean_fitness) << '\n';
  }
  return out.str();
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string();
}

}  // namespace

fs::path cmd_gen(const GenOptions& opts, const RunOptions& run_opts) {
  SynthParams params = opts.params_file ? load_synth_params(*opts.params_file) : SynthParams{};
  for (const auto& [key, value] : opts.overrides) set_synth_param(params, key, value);
  params.validate();
  std::ostringstream text;
  write_synth_params(text, params);

  RunDirectory run(resolve_out(run_opts, "gen", text.str()), run_opts.force,
                   run_opts.record_timings);
  if (opts.params_file) run.add_input("params", *opts.params_file);
  const auto scenario = run.timed("generate", [&] { return generate_scenario(params); });
  const auto files = run.timed("write", [&] { return write_scenario(scenario, params, run.path()); });
  for (const auto& f : files) run.record_output(f);

  const auto written = Json::parse(read_file(run.path() / "manifest.json"));
  run.finish(manifest_body("gen", Json::object(), {{"params", written.at("params")}}).dump());
  return run.path();
}

fs::path cmd_stats(const StatsOptions& opts, const StudyConfig& config,
                   const RunOptions& run_opts) {
  const Json params = {{"histogram_bins", opts.histogram_bins},
                       {"export_filtered", opts.export_filtered}};
  RunDirectory run(resolve_out(run_opts, "stats", config_text(config) + params.dump()),
                   run_opts.force, run_opts.record_timings);
  const auto loaded = run.timed("load", [&] { return load_network(run, opts.data_dir, config, false); });
  const auto& net = loaded.net;

  const auto summary = run.timed("summary", [&] { return graph_summary(net); });
  const Json summary_json = {{"order", summary.order},
                             {"size", summary.size},
                             {"density", summary.density},
                             {"transitivity", summary.transitivity},
                             {"avg_degree", summary.avg_degree},
                             {"avg_strength", summary.avg_strength}};
  run.write("summary.json", summary_json.dump(2) + "\n");

  const auto profile =
      run.timed("profile", [&] { return degree_profile(net, opts.histogram_bins); });
  std::ostringstream nodes;
  nodes << "poi_id,in_degree,out_degree,in_strength,out_strength,"
           "avg_in_neighbor_in_degree,avg_out_neighbor_out_degree\n";
  for (const auto& r : profile.nodes) {
    nodes << csv::escape(r.poi_id) << ',' << r.in_degree << ',' << r.out_degree << ','
          << csv::format_double(r.in_strength) << ',' << csv::format_double(r.out_strength)
          << ',' << optional_cell(r.avg_in_neighbor_in_degree) << ','
          << optional_cell(r.avg_out_neighbor_out_degree) << '\n';
  }
  run.write("degree_profile.csv", nodes.str());
  run.write("histogram_in_degree.csv", histogram_csv(profile.in_degree));
  run.write("histogram_out_degree.csv", histogram_csv(profile.out_degree));
  run.write("histogram_in_strength.csv", histogram_csv(profile.in_strength));
  run.write("histogram_out_strength.csv", histogram_csv(profile.out_strength));

  if (opts.export_filtered) {
    std::ostringstream pois, flows;
    write_pois(pois, network_pois(net));
    write_flows(flows, network_flows(net));
    run.write("filtered/pois.csv", pois.str());
    run.write("filtered/flows.csv", flows.str());
  }
  run.finish(manifest_body("stats", config_json(config), params).dump());
  return run.path();
}

fs::path cmd_simulate(const SimulateOptions& opts, const StudyConfig& config,
                      const RunOptions& run_opts) {
  const Json params = {{"seeds", opts.seeds_file ? "file" : "recovery week 1"},
                       {"weeks", config.horizon}};
  RunDirectory run(resolve_out(run_opts, "simulate", config_text(config) + params.dump()),
                   run_opts.force, run_opts.record_timings);
  const auto loaded = load_network(run, opts.data_dir, config, !opts.seeds_file);
  const auto& net = loaded.net;
  const auto theta = load_theta(run, opts.theta_file, net);

  SeedSet seeds;
  if (opts.seeds_file) {
    const auto ids = load_input(run, "seeds", *opts.seeds_file,
                                [](const fs::path& p) { return load_seed_ids(p); });
    std::vector<NodeIndex> nodes;
    for (const auto& id : ids) {
      const auto v = net.find(id);
      if (!v) throw ValidationError("simulate: seed poi '" + id + "' is not in the network");
      nodes.push_back(*v);
    }
    seeds = SeedSet(std::move(nodes));
  } else {
    seeds = derive_seeds(*loaded.panel);
  }

  const auto trace = run.timed("simulate", [&] { return simulate(net, seeds, theta, config.horizon); });
  std::ostringstream out;
  out << "poi_id,week,state\n";
  for (std::size_t i = 0; i < net.order(); ++i) {
    const auto id = csv::escape(net.node(static_cast<NodeIndex>(i)).poi_id);
    for (int w = 0; w <= config.horizon; ++w) {
      out << id << ',' << w << ',' << (trace.active(static_cast<NodeIndex>(i), w) ? 1 : 0)
          << '\n';
    }
  }
  run.write("trace.csv", out.str());
  Json summary = {{"final_count", final_active_count(trace)}, {"fixed_point_week", nullptr}};
  if (trace.fixed_point_week()) summary["fixed_point_week"] = *trace.fixed_point_week();
  run.write("summary.json", summary.dump(2) + "\n");
  run.finish(manifest_body("simulate", config_json(config), params).dump());
  return run.path();
}

fs::path cmd_calibrate(const CalibrateOptions& opts, const StudyConfig& config,
                       const RunOptions& run_opts) {
  RunDirectory run(resolve_out(run_opts, "calibrate", config_text(config)), run_opts.force,
                   run_opts.record_timings);
  const auto loaded = load_network(run, opts.data_dir, config, true);
  const auto& net = loaded.net;
  const auto result = run.timed("calibrate", [&] {
    return calibrate_thresholds(net, *loaded.panel, config, run_opts.threads);
  });

  ThresholdTable table;
  for (std::size_t i = 0; i < net.order(); ++i) {
    table.emplace_back(net.node(static_cast<NodeIndex>(i)).poi_id, result.theta_star[i]);
  }
  std::ostringstream thresholds;
  write_thresholds(thresholds, table);
  run.write("thresholds.csv", thresholds.str());
  run.write("history.csv", history_csv(result.history, -1.0, "mae"));

  const auto report = threshold_report(result.theta_star);
  std::ostringstream hist;
  hist << "bin_low,bin_high,count\n";
  for (const auto& b : report.bins) {
    hist << csv::format_fixed(b.low, 2) << ',' << csv::format_fixed(b.high, 2) << ','
         << b.count << '\n';
  }
  run.write("threshold_histogram.csv", hist.str());

  const Json summary = {{"mae_star", result.mae_star},
                        {"baseline_mae", result.baseline_mae},
                        {"M", config.ga_population},
                        {"N", config.ga_iterations},
                        {"epsilon", config.epsilon},
                        {"rng_seed", config.rng_seed},
                        {"baseline_samples", config.baseline_samples},
                        {"weeks", config.horizon},
                        {"network_order", net.order()},
                        {"network_size", net.size()},
                        {"seed_set", poi_ids(net, result.seed_set_used)},
                        {"fitness_evaluations", result.evaluations},
                        {"zero_threshold_count", report.zero_count}};
  run.write("calibration.json", summary.dump(2) + "\n");
  run.finish(manifest_body("calibrate", config_json(config), Json::object()).dump());
  return run.path();
}

fs::path cmd_optimize(const OptimizeOptions& opts, const StudyConfig& config,
                      const RunOptions& run_opts) {
  RunDirectory run(resolve_out(run_opts, "optimize", config_text(config)), run_opts.force,
                   run_opts.record_timings);
  const auto loaded = load_network(run, opts.data_dir, config, false);
  const auto& net = loaded.net;
  const auto theta = load_theta(run, opts.theta_file, net);
  const int horizon = model_horizon(config.horizon);

  ga::GaParams params;
  params.population_size = config.ga_population;
  params.max_iterations = config.ga_iterations;
  params.rng_seed = config.rng_seed;
  params.threads = run_opts.threads;

  std::vector<MultiplierScenario> scenarios;
  Json listed = Json::array();
  for (double gamma : config.gamma_list) {
    auto scenario = run.timed("optimize_" + csv::format_double(gamma), [&] {
      return optimize_multipliers(net, theta, gamma, horizon, params);
    });
    listed.push_back({{"gamma", gamma},
                      {"k", scenario.k},
                      {"omega", poi_ids(net, scenario.omega)},
                      {"objective_value", scenario.objective_value}});
    run.write("history_gamma_" + csv::format_double(gamma) + ".csv",
              history_csv(scenario.history, 1.0, "objective"));
    scenarios.push_back(std::move(scenario));
  }
  const Json multipliers = {{"network_order", net.order()},
                            {"horizon", horizon},
                            {"scenarios", listed}};
  run.write("multipliers.json", multipliers.dump(2) + "\n");

  if (scenarios.size() >= 2) {
    const auto report = overlap(scenarios);
    Json pairwise = Json::array();
    for (const auto& [pair, shared] : report.pairwise) {
      pairwise.push_back({{"gamma_a", scenarios[pair.first].gamma},
                          {"gamma_b", scenarios[pair.second].gamma},
                          {"shared", shared}});
    }
    const Json overlap_json = {{"intersection", poi_ids(net, report.intersection)},
                               {"pairwise", pairwise}};
    run.write("overlap.json", overlap_json.dump(2) + "\n");
  }
  run.finish(manifest_body("optimize", config_json(config), {{"simulation_steps", horizon}}).dump());
  return run.path();
}

fs::path cmd_analyze(const AnalyzeOptions& opts, const StudyConfig& config,
                     const RunOptions& run_opts) {
  RunDirectory run(resolve_out(run_opts, "analyze", config_text(config)), run_opts.force,
                   run_opts.record_timings);
  const auto pois = load_input(run, "pois", opts.data_dir / "pois.csv",
                               [](const fs::path& p) { return load_pois(p); });
  const auto table = load_input(run, "theta", opts.theta_file,
                                [](const fs::path& p) { return load_thresholds(p); });
  const auto multipliers_text = load_input(run, "multipliers", opts.multipliers_file,
                                           [](const fs::path& p) { return read_file(p); });

  // The analysed population is the thresholded POI set, in theta-file order.
  std::vector<PoiRecord> records;
  std::vector<double> values;
  std::unordered_map<std::string, NodeIndex> index;
  for (const auto& [id, theta] : table) {
    const auto row = pois.find(id);
    if (!row) throw ValidationError("analysis: theta poi '" + id + "' is not in pois.csv");
    index.emplace(id, static_cast<NodeIndex>(records.size()));
    records.push_back(pois[*row]);
    values.push_back(theta);
  }
  const ThresholdVector theta(std::move(values));

  std::vector<MultiplierScenario> scenarios;
  try {
    const auto doc = Json::parse(multipliers_text);
    for (const auto& s : doc.at("scenarios")) {
      MultiplierScenario scenario;
      scenario.gamma = s.at("gamma").get<double>();
      scenario.k = s.at("k").get<std::size_t>();
      scenario.network_order = records.size();
      std::vector<NodeIndex> omega;
      for (const auto& id : s.at("omega")) {
        const auto it = index.find(id.get<std::string>());
        if (it == index.end()) {
          throw ValidationError("analysis: multiplier poi '" + id.get<std::string>() +
                                "' has no threshold");
        }
        omega.push_back(it->second);
      }
      scenario.omega = SeedSet(std::move(omega));
      scenarios.push_back(std::move(scenario));
    }
  } catch (const Json::exception& e) {
    throw ValidationError("analysis: malformed multipliers file: " + std::string(e.what()));
  }

  std::ostringstream stats;
  stats << "sector,count,mean,median,q1,q3,min,max\n";
  for (const auto& row : threshold_by_sector(theta, records)) {
    const auto& s = row.stats;
    stats << to_string(row.sector) << ',' << s.count << ',' << csv::format_double(s.mean) << ','
          << csv::format_double(s.median) << ',' << csv::format_double(s.q1) << ','
          << csv::format_double(s.q3) << ',' << csv::format_double(s.min) << ','
          << csv::format_double(s.max) << '\n';
  }
  run.write("sector_stats.csv", stats.str());

  const auto split = income_analysis(theta, records);
  std::ostringstream income;
  income << "sector,count,slope,intercept,high_count,high_mean,high_median,low_count,low_mean,"
            "low_median\n";
  for (const auto& r : split.sectors) {
    income << to_string(r.sector) << ',' << r.count << ',' << optional_cell(r.slope) << ','
           << optional_cell(r.intercept) << ',' << r.high_band.count << ','
           << csv::format_double(r.high_band.mean) << ','
           << csv::format_double(r.high_band.median) << ',' << r.low_band.count << ','
           << csv::format_double(r.low_band.mean) << ','
           << csv::format_double(r.low_band.median) << '\n';
  }
  run.write("income_split.csv", income.str());
  const Json cutoffs = {{"high_cutoff", split.high_cutoff},
                        {"low_cutoff", split.low_cutoff},
                        {"poi_count", records.size()}};
  run.write("income_cutoffs.json", cutoffs.dump(2) + "\n");

  const auto composition = multiplier_composition(scenarios, records);
  std::ostringstream comp;
  comp << "gamma,k,sector,share,baseline_share,delta\n";
  for (const auto& s : composition.scenarios) {
    for (auto sector : kAllSectors) {
      const auto i = index_of(sector);
      comp << csv::format_double(s.gamma) << ',' << s.k << ',' << to_string(sector) << ','
           << csv::format_fixed(s.shares[i], 2) << ','
           << csv::format_fixed(composition.baseline[i], 2) << ','
           << csv::format_fixed(s.deltas[i], 2) << '\n';
    }
  }
  run.write("composition.csv", comp.str());

  std::ostringstream bands;
  bands << "gamma,sector,high_count,low_count\n";
  for (const auto& b : multiplier_by_income(scenarios, records, split)) {
    for (auto sector : kAllSectors) {
      const auto i = index_of(sector);
      bands << csv::format_double(b.gamma) << ',' << to_string(sector) << ',' << b.high[i]
            << ',' << b.low[i] << '\n';
    }
  }
  run.write("income_composition.csv", bands.str());
  run.finish(manifest_body("analyze", config_json(config), Json::object()).dump());
  return run.path();
}

}  // namespace recnet::cli
