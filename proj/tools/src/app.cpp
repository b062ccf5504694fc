#include "recnet_cli/app.hpp"

#include <cstdlib>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "recnet/csv.hpp"
#include "recnet/error.hpp"
#include "recnet_cli/commands.hpp"

#ifndef RECNET_VERSION
#define RECNET_VERSION "0.0.0"
#endif

namespace recnet::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kThreadsEnv = "RECOVERY_NET_THREADS";

// Study config keys; each is also a same-named command flag.
const std::pair<const char*, const char*> kConfigKeys[] = {
    {"epsilon", "Flow cutoff: keep edges with weight > epsilon"},
    {"ga_population", "GA population size M"},
    {"ga_iterations", "GA generations N"},
    {"horizon", "Observed weeks T"},
    {"gamma_list", "Comma-separated budget fractions"},
    {"rng_seed", "Master RNG seed"},
    {"baseline_samples", "Random threshold vectors in the MAE baseline"},
};

unsigned resolve_thread_count(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kThreadsEnv); env && *env) {
    const auto value = csv::parse_uint(env);
    if (!value || *value > 4096) {
      throw ValidationError(std::string(kThreadsEnv) + " must be a thread count, got '" + env +
                            "'");
    }
    return static_cast<unsigned>(*value);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Business-recovery network diffusion toolkit", "recovery-net"};
  app.require_subcommand(1);

  RunOptions run;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> config_file;
  std::map<std::string, std::optional<std::string>> overrides;

  auto with_run_options = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir,
                    "Output directory (default runs/<timestamp>-<command>-<config hash>)");
    sub->add_flag("--force", run.force, "Overwrite files in a non-empty output directory");
    sub->add_flag("--record-timings", run.record_timings,
                  "Add per-stage wall-clock timings to run_manifest.json");
    sub->add_option("--threads", threads,
                    std::string("Worker threads, 0 = all cores (env ") + kThreadsEnv + ")");
    return sub;
  };
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "Study config file (key = value lines)");
    for (const auto& [key, help] : kConfigKeys) {
      sub->add_option(std::string("--") + key, overrides[key], help);
    }
    return with_run_options(sub);
  };

  GenOptions gen;
  std::optional<std::string> params_file;
  std::vector<std::string> param_overrides;
  auto* gen_cmd = with_run_options(app.add_subcommand("gen", "Generate a synthetic scenario"));
  gen_cmd->add_option("--params", params_file, "Generator parameter file");
  gen_cmd->add_option("--param", param_overrides, "Override one parameter as key=value");

  StatsOptions stats;
  std::string data_dir;
  auto* stats_cmd =
      with_config(app.add_subcommand("stats", "Graph summary and degree profile"));
  stats_cmd->add_option("--data", data_dir, "Directory with pois.csv and flows.csv")->required();
  stats_cmd->add_option("--bins", stats.histogram_bins, "Log-spaced histogram bins")
      ->check(CLI::PositiveNumber);
  stats_cmd->add_flag("--export", stats.export_filtered,
                      "Also write the epsilon-filtered pois/flows under filtered/");

  std::string theta_file;
  std::optional<std::string> seeds_file;
  auto* sim_cmd = with_config(app.add_subcommand("simulate", "Run the threshold diffusion"));
  sim_cmd->add_option("--data", data_dir, "Dataset directory")->required();
  sim_cmd->add_option("--theta", theta_file, "Threshold CSV (poi_id,theta)")->required();
  sim_cmd->add_option("--seeds", seeds_file,
                      "Seed CSV (poi_id); default: POIs recovered in week 1 of recovery.csv");

  auto* cal_cmd = with_config(app.add_subcommand("calibrate", "Fit thresholds with the GA"));
  cal_cmd->add_option("--data", data_dir, "Directory with pois, flows and recovery CSVs")
      ->required();

  auto* opt_cmd =
      with_config(app.add_subcommand("optimize", "Select recovery multipliers per budget"));
  opt_cmd->add_option("--data", data_dir, "Dataset directory")->required();
  opt_cmd->add_option("--theta", theta_file, "Threshold CSV")->required();

  std::string multipliers_file;
  auto* ana_cmd =
      with_config(app.add_subcommand("analyze", "Sector, income and composition tables"));
  ana_cmd->add_option("--data", data_dir, "Directory with pois.csv")->required();
  ana_cmd->add_option("--theta", theta_file, "Threshold CSV")->required();
  ana_cmd->add_option("--multipliers", multipliers_file, "multipliers.json from optimize")
      ->required();

  auto* version_cmd = app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (version_cmd->parsed()) {
      out << "recovery-net " << RECNET_VERSION << '\n';
      return 0;
    }
    run.threads = resolve_thread_count(threads);
    if (out_dir) run.out = fs::path(*out_dir);

    fs::path written;
    if (gen_cmd->parsed()) {
      if (params_file) gen.params_file = fs::path(*params_file);
      for (const auto& kv : param_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw ValidationError("gen: --param expects key=value, got '" + kv + "'");
        }
        gen.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
      written = cmd_gen(gen, run);
    } else {
      StudyConfig config = config_file ? load_study_config(*config_file) : StudyConfig{};
      for (const auto& [key, value] : overrides) {
        if (value) set_study_config_value(config, key, *value);
      }
      config.validate();

      if (stats_cmd->parsed()) {
        stats.data_dir = data_dir;
        written = cmd_stats(stats, config, run);
      } else if (sim_cmd->parsed()) {
        SimulateOptions opts{data_dir, theta_file, std::nullopt};
        if (seeds_file) opts.seeds_file = fs::path(*seeds_file);
        written = cmd_simulate(opts, config, run);
      } else if (cal_cmd->parsed()) {
        written = cmd_calibrate({data_dir}, config, run);
      } else if (opt_cmd->parsed()) {
        written = cmd_optimize({data_dir, theta_file}, config, run);
      } else if (ana_cmd->parsed()) {
        written = cmd_analyze({data_dir, theta_file, multipliers_file}, config, run);
      }
    }
    out << written.string() << '\n';
    return 0;
  } catch (const ValidationError& e) {
    err << "recovery-net: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "recovery-net: runtime error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace recnet::cli
