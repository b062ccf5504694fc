#include "recnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "recnet/calibration.hpp"
#include "recnet/csv.hpp"
#include "recnet/error.hpp"
#include "recnet/io.hpp"
#include "recnet/network.hpp"
#include "recnet/rng.hpp"

namespace recnet {

namespace {

using Json = nlohmann::json;
using SectorArray = std::array<double, kSectorCount>;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  auto v = csv::parse_double(value);
  if (!v) throw ValidationError("synth params: " + key + " must be a real, got '" + value + "'");
  return *v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  auto v = csv::parse_uint(value);
  if (!v) {
    throw ValidationError("synth params: " + key + " must be a non-negative integer, got '" +
                          value + "'");
  }
  return *v;
}

SectorArray parse_sector_array(const std::string& key, const std::string& value) {
  SectorArray out{};
  std::stringstream ss(value);
  std::string token;
  std::size_t i = 0;
  while (std::getline(ss, token, ',')) {
    if (i == kSectorCount) break;
    out[i++] = parse_real(key, trim(token));
  }
  if (i != kSectorCount || std::getline(ss, token, ',')) {
    throw ValidationError("synth params: " + key + " needs exactly 10 values");
  }
  return out;
}

std::string join(const SectorArray& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += csv::format_double(values[i]);
  }
  return out;
}

}  // namespace

void set_synth_param(SynthParams& p, const std::string& key, const std::string& value) {
  if (key == "n_pois") {
    p.n_pois = parse_count(key, value);
  } else if (key == "edges_per_node") {
    p.edges_per_node = parse_count(key, value);
  } else if (key == "weight_log_mean") {
    p.weight_log_mean = parse_real(key, value);
  } else if (key == "weight_log_sd") {
    p.weight_log_sd = parse_real(key, value);
  } else if (key == "sector_mix") {
    p.sector_mix = parse_sector_array(key, value);
  } else if (key == "block_groups") {
    p.block_groups = parse_count(key, value);
  } else if (key == "income_log_mean") {
    p.income_log_mean = parse_real(key, value);
  } else if (key == "income_log_sd") {
    p.income_log_sd = parse_real(key, value);
  } else if (key == "theta_mean") {
    p.theta_mean = parse_sector_array(key, value);
  } else if (key == "theta_income_slope") {
    p.theta_income_slope = parse_sector_array(key, value);
  } else if (key == "income_reference") {
    p.income_reference = parse_real(key, value);
  } else if (key == "theta_noise_sd") {
    p.theta_noise_sd = parse_real(key, value);
  } else if (key == "seed_fraction") {
    p.seed_fraction = parse_real(key, value);
  } else if (key == "horizon") {
    const auto h = parse_count(key, value);
    if (h > 100000) throw ValidationError("synth params: horizon too large");
    p.horizon = static_cast<int>(h);
  } else if (key == "rng_seed") {
    p.rng_seed = parse_count(key, value);
  } else {
    throw ValidationError("synth params: unknown key '" + key + "'");
  }
}

namespace {

Json params_to_json(const SynthParams& p) {
  Json j;
  j["n_pois"] = p.n_pois;
  j["edges_per_node"] = p.edges_per_node;
  j["weight_log_mean"] = p.weight_log_mean;
  j["weight_log_sd"] = p.weight_log_sd;
  j["sector_mix"] = p.sector_mix;
  j["block_groups"] = p.block_groups;
  j["income_log_mean"] = p.income_log_mean;
  j["income_log_sd"] = p.income_log_sd;
  j["theta_mean"] = p.theta_mean;
  j["theta_income_slope"] = p.theta_income_slope;
  j["income_reference"] = p.income_reference;
  j["theta_noise_sd"] = p.theta_noise_sd;
  j["seed_fraction"] = p.seed_fraction;
  j["horizon"] = p.horizon;
  j["rng_seed"] = p.rng_seed;
  return j;
}

SynthParams params_from_json(const Json& j) {
  SynthParams p;
  p.n_pois = j.at("n_pois").get<std::size_t>();
  p.edges_per_node = j.at("edges_per_node").get<std::size_t>();
  p.weight_log_mean = j.at("weight_log_mean").get<double>();
  p.weight_log_sd = j.at("weight_log_sd").get<double>();
  p.sector_mix = j.at("sector_mix").get<SectorArray>();
  p.block_groups = j.at("block_groups").get<std::size_t>();
  p.income_log_mean = j.at("income_log_mean").get<double>();
  p.income_log_sd = j.at("income_log_sd").get<double>();
  p.theta_mean = j.at("theta_mean").get<SectorArray>();
  p.theta_income_slope = j.at("theta_income_slope").get<SectorArray>();
  p.income_reference = j.at("income_reference").get<double>();
  p.theta_noise_sd = j.at("theta_noise_sd").get<double>();
  p.seed_fraction = j.at("seed_fraction").get<double>();
  p.horizon = j.at("horizon").get<int>();
  p.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  p.validate();
  return p;
}

std::string zero_padded(const char* prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

// Preferential attachment: node v attaches to min(m, v) distinct earlier
// nodes drawn with probability proportional to in-degree + 1; each edge
// points either way with probability 1/2.
std::vector<Edge> attach(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> edges;
  if (n == 0) return edges;
  edges.reserve(n * m);
  // Each node appears (in_degree + 1) times.
  std::vector<NodeIndex> urn{0};
  urn.reserve(n * (m + 1));
  std::vector<NodeIndex> targets;
  for (std::size_t v = 1; v < n; ++v) {
    const auto node = static_cast<NodeIndex>(v);
    const std::size_t want = std::min(m, v);
    targets.clear();
    while (targets.size() < want) {
      const NodeIndex u = urn[rng.below(urn.size())];
      if (std::find(targets.begin(), targets.end(), u) == targets.end()) {
        targets.push_back(u);
      }
    }
    for (auto u : targets) {
      if (rng.bernoulli(0.5)) {
        edges.push_back({node, u, 0.0});
        urn.push_back(u);
      } else {
        edges.push_back({u, node, 0.0});
        urn.push_back(node);
      }
    }
    urn.push_back(node);
  }
  return edges;
}

std::size_t pick_category(const SectorArray& probabilities, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace

void SynthParams::validate() const {
  if (n_pois < 1) throw ValidationError("synth params: n_pois must be >= 1");
  if (edges_per_node >= n_pois) {
    throw ValidationError("synth params: edges_per_node (" + std::to_string(edges_per_node) +
                          ") must be < n_pois (" + std::to_string(n_pois) + ")");
  }
  if (n_pois > 50'000'000) throw ValidationError("synth params: n_pois too large");
  double total = 0.0;
  for (double p : sector_mix) {
    if (!(p >= 0.0)) throw ValidationError("synth params: sector_mix entries must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("synth params: sector_mix must sum to 1");
  }
  for (double t : theta_mean) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ValidationError("synth params: theta_mean entries must lie in [0, 1]");
    }
  }
  if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0)) {
    throw ValidationError("synth params: seed_fraction must lie in [0, 1]");
  }
  if (!(weight_log_sd >= 0.0) || !(income_log_sd >= 0.0) || !(theta_noise_sd >= 0.0)) {
    throw ValidationError("synth params: standard deviations must be >= 0");
  }
  if (horizon < 1) throw ValidationError("synth params: horizon must be >= 1");
}

SynthParams parse_synth_params(std::istream& in) {
  SynthParams params;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("synth params line " + std::to_string(line_no) +
                            ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) {
      throw ValidationError("synth params: duplicate key '" + key + "'");
    }
    set_synth_param(params, key, trim(line.substr(eq + 1)));
  }
  params.validate();
  return params;
}

SynthParams load_synth_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return parse_synth_params(in);
}

void write_synth_params(std::ostream& out, const SynthParams& p) {
  out << "n_pois = " << p.n_pois << '\n'
      << "edges_per_node = " << p.edges_per_node << '\n'
      << "weight_log_mean = " << csv::format_double(p.weight_log_mean) << '\n'
      << "weight_log_sd = " << csv::format_double(p.weight_log_sd) << '\n'
      << "sector_mix = " << join(p.sector_mix) << '\n'
      << "block_groups = " << p.block_groups << '\n'
      << "income_log_mean = " << csv::format_double(p.income_log_mean) << '\n'
      << "income_log_sd = " << csv::format_double(p.income_log_sd) << '\n'
      << "theta_mean = " << join(p.theta_mean) << '\n'
      << "theta_income_slope = " << join(p.theta_income_slope) << '\n'
      << "income_reference = " << csv::format_double(p.income_reference) << '\n'
      << "theta_noise_sd = " << csv::format_double(p.theta_noise_sd) << '\n'
      << "seed_fraction = " << csv::format_double(p.seed_fraction) << '\n'
      << "horizon = " << p.horizon << '\n'
      << "rng_seed = " << p.rng_seed << '\n';
}

Scenario generate_scenario(const SynthParams& params) {
  params.validate();
  const std::size_t n = params.n_pois;
  Rng rng(params.rng_seed);

  std::vector<Edge> edges = attach(n, params.edges_per_node, rng);
  for (auto& e : edges) {
    e.weight = std::exp(params.weight_log_mean + params.weight_log_sd * rng.normal());
  }

  const std::size_t groups =
      params.block_groups > 0 ? params.block_groups : std::max<std::size_t>(1, n / 25);
  std::vector<double> group_income(groups);
  for (auto& income : group_income) {
    income = std::round(std::exp(params.income_log_mean + params.income_log_sd * rng.normal()));
  }

  const std::size_t id_width = std::to_string(n > 0 ? n - 1 : 0).size();
  const std::size_t group_width = std::to_string(groups - 1).size();
  std::vector<PoiRecord> records(n);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& poi = records[i];
    poi.poi_id = zero_padded("poi", i, id_width);
    poi.sector = kAllSectors[pick_category(params.sector_mix, rng)];
    const std::size_t group = rng.below(groups);
    poi.block_group_id = zero_padded("bg", group, group_width);
    poi.median_income = group_income[group];
    poi.latitude = 29.0 + 1.5 * rng.uniform();
    poi.longitude = -91.5 + 2.0 * rng.uniform();
    const std::size_t s = index_of(poi.sector);
    const double planted = params.theta_mean[s] +
                           params.theta_income_slope[s] *
                               (poi.median_income - params.income_reference) / 10000.0 +
                           params.theta_noise_sd * rng.normal();
    theta[i] = std::clamp(planted, 0.0, 1.0);
  }

  const auto seed_count =
      static_cast<std::size_t>(std::llround(params.seed_fraction * static_cast<double>(n)));
  std::vector<NodeIndex> seeds;
  seeds.reserve(seed_count);
  // Floyd's algorithm for a uniform subset of the requested size.
  std::set<NodeIndex> chosen;
  for (std::size_t j = n - seed_count; j < n; ++j) {
    const auto t = static_cast<NodeIndex>(rng.below(j + 1));
    chosen.insert(chosen.count(t) ? static_cast<NodeIndex>(j) : t);
  }
  seeds.assign(chosen.begin(), chosen.end());

  Scenario scenario;
  DependencyNetwork net(records, edges);
  scenario.theta_true = ThresholdVector(std::move(theta));
  scenario.seeds = SeedSet(std::move(seeds));
  const auto trace =
      simulate(net, scenario.seeds, scenario.theta_true, model_horizon(params.horizon));

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& poi : records) ids.push_back(poi.poi_id);
  scenario.panel = RecoveryPanel(ids, params.horizon);
  for (std::size_t i = 0; i < n; ++i) {
    for (int week = 1; week <= params.horizon; ++week) {
      scenario.panel.set_state(i, week,
                               trace.active(static_cast<NodeIndex>(i), model_week(week)));
    }
  }
  scenario.flows = network_flows(net);
  scenario.pois = PoiTable(std::move(records));
  return scenario;
}

std::vector<std::filesystem::path> write_scenario(const Scenario& scenario,
                                                  const SynthParams& params,
                                                  const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& content) {
    const auto path = dir / name;
    write_file_atomic(path, content);
    written.push_back(path);
  };
  {
    std::ostringstream out;
    write_pois(out, scenario.pois);
    emit("pois.csv", out.str());
  }
  {
    std::ostringstream out;
    write_flows(out, scenario.flows);
    emit("flows.csv", out.str());
  }
  {
    std::ostringstream out;
    write_recovery(out, scenario.panel);
    emit("recovery.csv", out.str());
  }
  {
    ThresholdTable table;
    for (std::size_t i = 0; i < scenario.pois.size(); ++i) {
      table.emplace_back(scenario.pois[i].poi_id, scenario.theta_true[i]);
    }
    std::ostringstream out;
    write_thresholds(out, table);
    emit("theta_true.csv", out.str());
  }
  {
    Json manifest;
    manifest["generator"] = "preferential-attachment";
    manifest["params"] = params_to_json(params);
    manifest["rng_seed"] = params.rng_seed;
    manifest["horizon"] = params.horizon;
    Json seeds = Json::array();
    for (auto s : scenario.seeds) seeds.push_back(scenario.pois[s].poi_id);
    manifest["planted_seeds"] = seeds;
    emit("manifest.json", manifest.dump(2) + "\n");
  }
  return written;
}

SynthParams synth_params_from_manifest(const std::filesystem::path& manifest) {
  const auto text = read_file(manifest);
  Json j;
  try {
    j = Json::parse(text);
    return params_from_json(j.at("params"));
  } catch (const Json::exception& e) {
    throw ValidationError("manifest " + manifest.string() + ": " + e.what());
  }
}

}  // namespace recnet
