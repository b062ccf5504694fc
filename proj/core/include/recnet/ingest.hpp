#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recnet/sector.hpp"

namespace recnet {

struct PoiRecord {
  std::string poi_id;
  Sector sector = Sector::kRetail;
  double latitude = 0.0;
  double longitude = 0.0;
  std::string block_group_id;
  double median_income = 0.0;

  bool operator==(const PoiRecord&) const = default;
};

// Rows in file order with a poi_id -> row index lookup.
class PoiTable {
 public:
  PoiTable() = default;
  // Throws ValidationError on a duplicate id.
  explicit PoiTable(std::vector<PoiRecord> records);

  const std::vector<PoiRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const PoiRecord& operator[](std::size_t i) const { return records_[i]; }

  std::optional<std::size_t> find(const std::string& poi_id) const;

  bool operator==(const PoiTable& other) const {
    return records_ == other.records_;
  }

 private:
  std::vector<PoiRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FlowRecord {
  std::string origin;
  std::string destination;
  double avg_weekly_visits = 0.0;

  bool operator==(const FlowRecord&) const = default;
};

using FlowList = std::vector<FlowRecord>;

// Dense binary |V| x T matrix of observed recovery states. Weeks are
// 1-based in the public accessors.
class RecoveryPanel {
 public:
  RecoveryPanel() = default;
  RecoveryPanel(std::vector<std::string> poi_ids, int horizon);

  const std::vector<std::string>& poi_ids() const { return poi_ids_; }
  std::size_t rows() const { return poi_ids_.size(); }
  int horizon() const { return horizon_; }

  std::uint8_t state(std::size_t row, int week) const {
    return states_[row * static_cast<std::size_t>(horizon_) +
                   static_cast<std::size_t>(week - 1)];
  }
  void set_state(std::size_t row, int week, std::uint8_t value) {
    states_[row * static_cast<std::size_t>(horizon_) +
            static_cast<std::size_t>(week - 1)] = value;
  }

  std::optional<std::size_t> find(const std::string& poi_id) const;

  // Number of recovered POIs in `week`.
  std::size_t column_sum(int week) const;

  bool operator==(const RecoveryPanel& other) const {
    return horizon_ == other.horizon_ && poi_ids_ == other.poi_ids_ &&
           states_ == other.states_;
  }

 private:
  std::vector<std::string> poi_ids_;
  int horizon_ = 0;
  std::vector<std::uint8_t> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct StudyConfig {
  double epsilon = 0.0;
  int ga_population = 20;
  int ga_iterations = 10000;
  int horizon = 18;
  std::vector<double> gamma_list = {0.03, 0.05, 0.1};
  std::uint64_t rng_seed = 1;
  int baseline_samples = 500;

  // Throws ValidationError when an invariant is broken.
  void validate() const;
};

// Flat `key = value` text; `#` starts a comment. Unknown keys are rejected.
StudyConfig parse_study_config(std::istream& in);
StudyConfig load_study_config(const std::filesystem::path& path);
// Applies one `key`/`value` pair; used by the config parser and CLI overrides.
void set_study_config_value(StudyConfig& config, const std::string& key,
                            const std::string& value);
void write_study_config(std::ostream& out, const StudyConfig& config);

PoiTable load_pois(const std::filesystem::path& path);
PoiTable read_pois(std::istream& in);
FlowList load_flows(const std::filesystem::path& path);
FlowList read_flows(std::istream& in);
RecoveryPanel load_recovery(const std::filesystem::path& path, int horizon);
RecoveryPanel read_recovery(std::istream& in, int horizon);

// `thresholds.csv` / `theta_true.csv`: poi_id,theta with theta in [0, 1].
using ThresholdTable = std::vector<std::pair<std::string, double>>;
ThresholdTable load_thresholds(const std::filesystem::path& path);
ThresholdTable read_thresholds(std::istream& in);
void write_thresholds(std::ostream& out, const ThresholdTable& table);

// Seed file: single column poi_id.
std::vector<std::string> load_seed_ids(const std::filesystem::path& path);
std::vector<std::string> read_seed_ids(std::istream& in);

void write_pois(std::ostream& out, const PoiTable& pois);
void write_flows(std::ostream& out, const FlowList& flows);
void write_recovery(std::ostream& out, const RecoveryPanel& panel);

enum class ViolationKind {
  kUnknownEndpoint,   // flow endpoint not in the POI table
  kUnknownPanelRow,   // panel row whose poi_id is not in the POI table
  kMissingPanelRow,   // POI used by a flow has no panel row
};

struct Violation {
  ViolationKind kind;
  std::string poi_id;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

const char* to_string(ViolationKind kind);

// Cross-checks flows and (when given) the panel against the POI table.
// Throws ValidationError only for an empty POI table.
ValidationReport validate_dataset(const PoiTable& pois, const FlowList& flows,
                                  const RecoveryPanel* panel);

}  // namespace recnet
