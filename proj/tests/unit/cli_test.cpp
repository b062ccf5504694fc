#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "recnet/io.hpp"
#include "recnet/multiplier.hpp"
#include "recnet_cli/app.hpp"
#include "recnet_cli/run.hpp"

namespace fs = std::filesystem;
using recnet::read_file;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "recovery-net");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = recnet::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path root;
  Workspace() {
    root = fs::temp_directory_path() / "recnet-cli-test";
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string operator/(const std::string& name) const { return (root / name).string(); }
};

}  // namespace

TEST_CASE("cli") {
  Workspace ws;
  REQUIRE(cli({"gen", "--out", ws / "gen", "--param", "n_pois=80", "--param", "rng_seed=5"})
              .code == 0);

  SUBCASE("version") {
    const auto r = cli({"version"});
    CHECK(r.code == 0);
    CHECK(r.out == "recovery-net 0.1.0\n");
  }

  SUBCASE("stats on an epsilon filter equals stats on the exported copy") {
    REQUIRE(cli({"stats", "--data", ws / "gen", "--epsilon", "20", "--export", "--out",
                 ws / "filtered"})
                .code == 0);
    REQUIRE(cli({"stats", "--data", ws / "filtered/filtered", "--epsilon", "0", "--out",
                 ws / "prefiltered"})
                .code == 0);
    for (const char* name : {"summary.json", "degree_profile.csv", "histogram_in_degree.csv",
                             "histogram_out_strength.csv"}) {
      CHECK(read_file(ws.root / "filtered" / name) == read_file(ws.root / "prefiltered" / name));
    }
    const auto summary = nlohmann::json::parse(read_file(ws.root / "filtered/summary.json"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : summary.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"avg_degree", "avg_strength", "density", "order",
                                           "size", "transitivity"});
  }

  SUBCASE("manifest lists outputs with their digests") {
    REQUIRE(cli({"stats", "--data", ws / "gen", "--out", ws / "s"}).code == 0);
    const auto manifest = nlohmann::json::parse(read_file(ws.root / "s/run_manifest.json"));
    CHECK(manifest.at("command") == "stats");
    CHECK(manifest.at("config").at("epsilon") == 0.0);
    CHECK(manifest.at("inputs").at("pois").at("sha256") ==
          recnet::cli::file_sha256(ws.root / "gen/pois.csv"));
    CHECK_FALSE(manifest.contains("timings_seconds"));
    for (const auto& entry : manifest.at("outputs")) {
      CHECK(entry.at("sha256") ==
            recnet::cli::file_sha256(ws.root / "s" / entry.at("path").get<std::string>()));
    }
    REQUIRE(cli({"stats", "--data", ws / "gen", "--out", ws / "t", "--record-timings"}).code == 0);
    CHECK(nlohmann::json::parse(read_file(ws.root / "t/run_manifest.json"))
              .contains("timings_seconds"));
  }

  SUBCASE("refuses to overwrite without --force") {
    const auto r = cli({"gen", "--out", ws / "gen", "--param", "n_pois=80"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--force") != std::string::npos);
    CHECK(cli({"gen", "--out", ws / "gen", "--force", "--param", "n_pois=80", "--param",
               "rng_seed=5"})
              .code == 0);
  }

  SUBCASE("exit codes") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"stats"}).code == 1);
    CHECK(cli({"stats", "--data", ws / "missing", "--out", ws / "x1"}).code == 1);
    CHECK(cli({"stats", "--data", ws / "gen", "--ga_population", "zero", "--out", ws / "x2"})
              .code == 1);
    CHECK(cli({"gen", "--param", "n_pois", "--out", ws / "x3"}).code == 1);
    CHECK(cli({"gen", "--param", "edges_per_node=500", "--out", ws / "x4"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
  }

  SUBCASE("thread count from the environment") {
    ::setenv("RECOVERY_NET_THREADS", "many", 1);
    CHECK(cli({"stats", "--data", ws / "gen", "--out", ws / "e1"}).code == 1);
    // The flag wins over the environment.
    CHECK(cli({"stats", "--data", ws / "gen", "--out", ws / "e2", "--threads", "2"}).code == 0);
    ::setenv("RECOVERY_NET_THREADS", "2", 1);
    CHECK(cli({"stats", "--data", ws / "gen", "--out", ws / "e3"}).code == 0);
    ::unsetenv("RECOVERY_NET_THREADS");
  }

  SUBCASE("optimize uses the rounded budget per gamma") {
    REQUIRE(cli({"optimize", "--data", ws / "gen", "--theta", ws / "gen/theta_true.csv",
                 "--ga_iterations", "20", "--gamma_list", "0.03,0.1", "--out", ws / "opt"})
                .code == 0);
    const auto doc = nlohmann::json::parse(read_file(ws.root / "opt/multipliers.json"));
    const auto order = doc.at("network_order").get<std::size_t>();
    const auto& scenarios = doc.at("scenarios");
    REQUIRE(scenarios.size() == 2);
    CHECK(scenarios[0].at("k") == recnet::multiplier_budget(0.03, order));
    CHECK(scenarios[1].at("k") == recnet::multiplier_budget(0.1, order));
    CHECK(scenarios[0].at("omega").size() == scenarios[0].at("k").get<std::size_t>());
    CHECK(fs::exists(ws.root / "opt/overlap.json"));
  }

  SUBCASE("simulate with an explicit seed file") {
    recnet::write_file_atomic(ws.root / "seeds.csv", "poi_id\npoi00\n");
    REQUIRE(cli({"simulate", "--data", ws / "gen", "--theta", ws / "gen/theta_true.csv",
                 "--seeds", ws / "seeds.csv", "--horizon", "5", "--out", ws / "sim"})
                .code == 0);
    const auto trace = read_file(ws.root / "sim/trace.csv");
    CHECK(trace.rfind("poi_id,week,state\npoi00,0,1\n", 0) == 0);
    const auto summary = nlohmann::json::parse(read_file(ws.root / "sim/summary.json"));
    CHECK(summary.at("final_count").get<int>() >= 1);

    recnet::write_file_atomic(ws.root / "bad_seeds.csv", "poi_id\nnobody\n");
    CHECK(cli({"simulate", "--data", ws / "gen", "--theta", ws / "gen/theta_true.csv",
               "--seeds", ws / "bad_seeds.csv", "--out", ws / "sim2"})
              .code == 1);
  }
}
