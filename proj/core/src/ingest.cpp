#include "recnet/ingest.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "recnet/csv.hpp"
#include "recnet/error.hpp"

namespace recnet {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

void require_fields(const csv::Record& rec, std::size_t count) {
  if (rec.fields.size() != count) {
    throw ParseError(ParseErrorKind::kMalformedRow, rec.line,
                     "expected " + std::to_string(count) + " fields, got " +
                         std::to_string(rec.fields.size()));
  }
}

double require_double(const csv::Record& rec, std::size_t col,
                      const char* name) {
  auto value = csv::parse_double(rec.fields[col]);
  if (!value) {
    throw ParseError(ParseErrorKind::kMalformedRow, rec.line,
                     std::string("invalid ") + name + " '" + rec.fields[col] + "'");
  }
  return *value;
}

void require_nonempty(const csv::Record& rec, std::size_t col, const char* name) {
  if (rec.fields[col].empty()) {
    throw ParseError(ParseErrorKind::kMalformedRow, rec.line,
                     std::string("empty ") + name);
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int require_positive_int(const std::string& key, const std::string& value) {
  auto parsed = csv::parse_int(value);
  if (!parsed || *parsed < 1 || *parsed > 1'000'000'000) {
    throw ValidationError("config: " + key + " must be a positive integer, got '" +
                          value + "'");
  }
  return static_cast<int>(*parsed);
}

}  // namespace

// ---------------------------------------------------------------- PoiTable

PoiTable::PoiTable(std::vector<PoiRecord> records) : records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].poi_id, i).second) {
      throw ValidationError("duplicate poi_id '" + records_[i].poi_id + "'");
    }
  }
}

std::optional<std::size_t> PoiTable::find(const std::string& poi_id) const {
  auto it = index_.find(poi_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ----------------------------------------------------------- RecoveryPanel

RecoveryPanel::RecoveryPanel(std::vector<std::string> poi_ids, int horizon)
    : poi_ids_(std::move(poi_ids)), horizon_(horizon) {
  if (horizon_ < 1) throw ValidationError("panel horizon must be >= 1");
  states_.assign(poi_ids_.size() * static_cast<std::size_t>(horizon_), 0);
  index_.reserve(poi_ids_.size());
  for (std::size_t i = 0; i < poi_ids_.size(); ++i) {
    if (!index_.emplace(poi_ids_[i], i).second) {
      throw ValidationError("duplicate panel poi_id '" + poi_ids_[i] + "'");
    }
  }
}

std::optional<std::size_t> RecoveryPanel::find(const std::string& poi_id) const {
  auto it = index_.find(poi_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RecoveryPanel::column_sum(int week) const {
  std::size_t total = 0;
  for (std::size_t row = 0; row < rows(); ++row) total += state(row, week);
  return total;
}

// -------------------------------------------------------------- StudyConfig

void StudyConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ValidationError("config: epsilon must be >= 0");
  if (ga_population < 1) throw ValidationError("config: ga_population must be >= 1");
  if (ga_iterations < 1) throw ValidationError("config: ga_iterations must be >= 1");
  if (horizon < 1) throw ValidationError("config: horizon must be >= 1");
  if (baseline_samples < 1) {
    throw ValidationError("config: baseline_samples must be >= 1");
  }
  for (double gamma : gamma_list) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
      throw ValidationError("config: gamma values must lie in (0, 1]");
    }
  }
}

void set_study_config_value(StudyConfig& config, const std::string& key,
                            const std::string& value) {
  if (key == "epsilon") {
    auto v = csv::parse_double(value);
    if (!v || *v < 0.0) {
      throw ValidationError("config: epsilon must be a non-negative real, got '" +
                            value + "'");
    }
    config.epsilon = *v;
  } else if (key == "ga_population") {
    config.ga_population = require_positive_int(key, value);
  } else if (key == "ga_iterations") {
    config.ga_iterations = require_positive_int(key, value);
  } else if (key == "horizon") {
    config.horizon = require_positive_int(key, value);
  } else if (key == "baseline_samples") {
    config.baseline_samples = require_positive_int(key, value);
  } else if (key == "rng_seed") {
    auto v = csv::parse_uint(value);
    if (!v) throw ValidationError("config: rng_seed must be an unsigned integer");
    config.rng_seed = *v;
  } else if (key == "gamma_list") {
    std::vector<double> gammas;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
      auto v = csv::parse_double(trim(token));
      if (!v || !(*v > 0.0 && *v <= 1.0)) {
        throw ValidationError("config: gamma_list entries must lie in (0, 1], got '" +
                              token + "'");
      }
      gammas.push_back(*v);
    }
    if (gammas.empty()) throw ValidationError("config: gamma_list is empty");
    config.gamma_list = std::move(gammas);
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

StudyConfig parse_study_config(std::istream& in) {
  StudyConfig config;
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
      throw ValidationError("config line " + std::to_string(line_no) +
                            ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) {
      throw ValidationError("config line " + std::to_string(line_no) +
                            ": duplicate key '" + key + "'");
    }
    set_study_config_value(config, key, trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_study_config(in);
}

void write_study_config(std::ostream& out, const StudyConfig& config) {
  out << "epsilon = " << csv::format_double(config.epsilon) << '\n'
      << "ga_population = " << config.ga_population << '\n'
      << "ga_iterations = " << config.ga_iterations << '\n'
      << "horizon = " << config.horizon << '\n'
      << "gamma_list = ";
  for (std::size_t i = 0; i < config.gamma_list.size(); ++i) {
    if (i > 0) out << ',';
    out << csv::format_double(config.gamma_list[i]);
  }
  out << '\n'
      << "rng_seed = " << config.rng_seed << '\n'
      << "baseline_samples = " << config.baseline_samples << '\n';
}

// ------------------------------------------------------------------ loaders

PoiTable read_pois(std::istream& in) {
  csv::Reader reader(in);
  csv::expect_header(reader, {"poi_id", "sector", "latitude", "longitude",
                              "block_group_id", "median_income"},
                     "pois.csv");
  std::vector<PoiRecord> records;
  std::unordered_map<std::string, std::size_t> first_line;
  while (auto rec = reader.next()) {
    require_fields(*rec, 6);
    require_nonempty(*rec, 0, "poi_id");
    PoiRecord poi;
    poi.poi_id = rec->fields[0];
    auto sector = parse_sector(rec->fields[1]);
    if (!sector) {
      throw ParseError(ParseErrorKind::kUnknownSector, rec->line,
                       "'" + rec->fields[1] + "'");
    }
    poi.sector = *sector;
    poi.latitude = require_double(*rec, 2, "latitude");
    poi.longitude = require_double(*rec, 3, "longitude");
    if (poi.latitude < -90.0 || poi.latitude > 90.0) {
      throw ParseError(ParseErrorKind::kMalformedRow, rec->line,
                       "latitude out of range");
    }
    if (poi.longitude < -180.0 || poi.longitude > 180.0) {
      throw ParseError(ParseErrorKind::kMalformedRow, rec->line,
                       "longitude out of range");
    }
    poi.block_group_id = rec->fields[4];
    poi.median_income = require_double(*rec, 5, "median_income");
    if (poi.median_income < 0.0) {
      throw ParseError(ParseErrorKind::kNegativeIncome, rec->line,
                       "poi '" + poi.poi_id + "'");
    }
    auto [it, inserted] = first_line.emplace(poi.poi_id, rec->line);
    if (!inserted) {
      throw ParseError(ParseErrorKind::kDuplicatePoi, rec->line,
                       "'" + poi.poi_id + "' first seen at line " +
                           std::to_string(it->second));
    }
    records.push_back(std::move(poi));
  }
  return PoiTable(std::move(records));
}

PoiTable load_pois(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_pois(in);
}

FlowList read_flows(std::istream& in) {
  csv::Reader reader(in);
  csv::expect_header(reader, {"origin", "destination", "avg_weekly_visits"},
                     "flows.csv");
  FlowList flows;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  while (auto rec = reader.next()) {
    require_fields(*rec, 3);
    require_nonempty(*rec, 0, "origin");
    require_nonempty(*rec, 1, "destination");
    FlowRecord flow{rec->fields[0], rec->fields[1],
                    require_double(*rec, 2, "avg_weekly_visits")};
    if (flow.origin == flow.destination) {
      throw ParseError(ParseErrorKind::kSelfLoop, rec->line, "'" + flow.origin + "'");
    }
    if (flow.avg_weekly_visits < 0.0) {
      throw ParseError(ParseErrorKind::kNegativeWeight, rec->line,
                       flow.origin + " -> " + flow.destination);
    }
    auto [it, inserted] = seen.emplace(std::make_pair(flow.origin, flow.destination),
                                       rec->line);
    if (!inserted) {
      throw ParseError(ParseErrorKind::kDuplicateEdge, rec->line,
                       flow.origin + " -> " + flow.destination +
                           " first seen at line " + std::to_string(it->second));
    }
    flows.push_back(std::move(flow));
  }
  return flows;
}

FlowList load_flows(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_flows(in);
}

RecoveryPanel read_recovery(std::istream& in, int horizon) {
  if (horizon < 1) throw ValidationError("recovery horizon must be >= 1");
  csv::Reader reader(in);
  csv::expect_header(reader, {"poi_id", "week", "state"}, "recovery.csv");

  struct Cell {
    std::size_t row;
    int week;
    std::uint8_t state;
  };
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> row_of;
  std::vector<Cell> cells;
  // Line of the first occurrence of each (row, week), 0 = absent.
  std::vector<std::size_t> cell_line;
  const auto T = static_cast<std::size_t>(horizon);

  while (auto rec = reader.next()) {
    require_fields(*rec, 3);
    require_nonempty(*rec, 0, "poi_id");
    auto week = csv::parse_int(rec->fields[1]);
    if (!week) {
      throw ParseError(ParseErrorKind::kMalformedRow, rec->line,
                       "invalid week '" + rec->fields[1] + "'");
    }
    if (*week < 1 || *week > horizon) {
      throw ParseError(ParseErrorKind::kWeekOutOfRange, rec->line,
                       "week " + rec->fields[1] + " outside 1.." +
                           std::to_string(horizon));
    }
    const auto& token = rec->fields[2];
    if (token != "0" && token != "1") {
      throw ParseError(ParseErrorKind::kBadState, rec->line, "'" + token + "'");
    }
    auto [it, inserted] = row_of.emplace(rec->fields[0], ids.size());
    if (inserted) {
      ids.push_back(rec->fields[0]);
      cell_line.resize(cell_line.size() + T, 0);
    }
    const std::size_t slot = it->second * T + static_cast<std::size_t>(*week - 1);
    if (cell_line[slot] != 0) {
      throw ParseError(ParseErrorKind::kDuplicateCell, rec->line,
                       "poi '" + rec->fields[0] + "' week " + rec->fields[1] +
                           " first seen at line " + std::to_string(cell_line[slot]));
    }
    cell_line[slot] = rec->line;
    cells.push_back({it->second, static_cast<int>(*week),
                     static_cast<std::uint8_t>(token == "1")});
  }

  for (std::size_t row = 0; row < ids.size(); ++row) {
    for (std::size_t w = 0; w < T; ++w) {
      if (cell_line[row * T + w] == 0) {
        throw ParseError(ParseErrorKind::kMissingCell, 0,
                         "poi '" + ids[row] + "' week " + std::to_string(w + 1));
      }
    }
  }

  RecoveryPanel panel(std::move(ids), horizon);
  for (const auto& cell : cells) panel.set_state(cell.row, cell.week, cell.state);
  return panel;
}

RecoveryPanel load_recovery(const std::filesystem::path& path, int horizon) {
  auto in = open_input(path);
  return read_recovery(in, horizon);
}

ThresholdTable read_thresholds(std::istream& in) {
  csv::Reader reader(in);
  csv::expect_header(reader, {"poi_id", "theta"}, "thresholds");
  ThresholdTable table;
  std::unordered_map<std::string, std::size_t> seen;
  while (auto rec = reader.next()) {
    require_fields(*rec, 2);
    require_nonempty(*rec, 0, "poi_id");
    const double theta = require_double(*rec, 1, "theta");
    if (theta < 0.0 || theta > 1.0) {
      throw ParseError(ParseErrorKind::kMalformedRow, rec->line,
                       "theta " + rec->fields[1] + " outside [0, 1]");
    }
    if (!seen.emplace(rec->fields[0], rec->line).second) {
      throw ParseError(ParseErrorKind::kDuplicatePoi, rec->line, "'" + rec->fields[0] + "'");
    }
    table.emplace_back(rec->fields[0], theta);
  }
  return table;
}

ThresholdTable load_thresholds(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_thresholds(in);
}

std::vector<std::string> read_seed_ids(std::istream& in) {
  csv::Reader reader(in);
  csv::expect_header(reader, {"poi_id"}, "seeds");
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> seen;
  while (auto rec = reader.next()) {
    require_fields(*rec, 1);
    require_nonempty(*rec, 0, "poi_id");
    if (!seen.emplace(rec->fields[0], rec->line).second) {
      throw ParseError(ParseErrorKind::kDuplicatePoi, rec->line, "'" + rec->fields[0] + "'");
    }
    ids.push_back(rec->fields[0]);
  }
  return ids;
}

std::vector<std::string> load_seed_ids(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_seed_ids(in);
}

// ------------------------------------------------------------------ writers

void write_thresholds(std::ostream& out, const ThresholdTable& table) {
  out << "poi_id,theta\n";
  for (const auto& [id, theta] : table) {
    out << csv::escape(id) << ',' << csv::format_double(theta) << '\n';
  }
}

void write_pois(std::ostream& out, const PoiTable& pois) {
  out << "poi_id,sector,latitude,longitude,block_group_id,median_income\n";
  for (const auto& poi : pois.records()) {
    out << csv::escape(poi.poi_id) << ',' << to_string(poi.sector) << ','
        << csv::format_double(poi.latitude) << ','
        << csv::format_double(poi.longitude) << ','
        << csv::escape(poi.block_group_id) << ','
        << csv::format_double(poi.median_income) << '\n';
  }
}

void write_flows(std::ostream& out, const FlowList& flows) {
  out << "origin,destination,avg_weekly_visits\n";
  for (const auto& flow : flows) {
    out << csv::escape(flow.origin) << ',' << csv::escape(flow.destination) << ','
        << csv::format_double(flow.avg_weekly_visits) << '\n';
  }
}

void write_recovery(std::ostream& out, const RecoveryPanel& panel) {
  out << "poi_id,week,state\n";
  for (std::size_t row = 0; row < panel.rows(); ++row) {
    const std::string id = csv::escape(panel.poi_ids()[row]);
    for (int week = 1; week <= panel.horizon(); ++week) {
      out << id << ',' << week << ',' << static_cast<int>(panel.state(row, week))
          << '\n';
    }
  }
}

// --------------------------------------------------------------- validation

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownEndpoint: return "UnknownEndpoint";
    case ViolationKind::kUnknownPanelRow: return "UnknownPanelRow";
    case ViolationKind::kMissingPanelRow: return "MissingPanelRow";
  }
  return "Unknown";
}

std::string ValidationReport::describe() const {
  std::string out;
  for (const auto& v : violations) {
    out += to_string(v.kind);
    out += "(\"" + v.poi_id + "\")\n";
  }
  return out;
}

ValidationReport validate_dataset(const PoiTable& pois, const FlowList& flows,
                                  const RecoveryPanel* panel) {
  if (pois.empty()) throw ValidationError("POI table is empty");
  ValidationReport report;
  std::set<std::string> unknown_reported;
  std::set<std::string> missing_reported;
  for (const auto& flow : flows) {
    for (const auto* id : {&flow.origin, &flow.destination}) {
      if (!pois.find(*id)) {
        if (unknown_reported.insert(*id).second) {
          report.violations.push_back({ViolationKind::kUnknownEndpoint, *id});
        }
      } else if (panel != nullptr && !panel->find(*id)) {
        if (missing_reported.insert(*id).second) {
          report.violations.push_back({ViolationKind::kMissingPanelRow, *id});
        }
      }
    }
  }
  if (panel != nullptr) {
    for (const auto& id : panel->poi_ids()) {
      if (!pois.find(id)) {
        report.violations.push_back({ViolationKind::kUnknownPanelRow, id});
      }
    }
  }
  return report;
}

}  // namespace recnet
