#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "recnet/ingest.hpp"

namespace recnet {

using NodeIndex = std::uint32_t;

struct Edge {
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

// Directed weighted POI dependency graph. Immutable after construction.
// Nodes keep their POI attributes; edges keep their input order. In- and
// out-adjacency are stored in CSR form, each neighbor list sorted by index.
class DependencyNetwork {
 public:
  DependencyNetwork() = default;
  // Throws ValidationError on self-loops, parallel edges, negative weights,
  // endpoints out of range or duplicate poi_ids.
  DependencyNetwork(std::vector<PoiRecord> nodes, std::vector<Edge> edges);

  std::size_t order() const { return nodes_.size(); }
  std::size_t size() const { return edges_.size(); }

  const std::vector<PoiRecord>& nodes() const { return nodes_; }
  const PoiRecord& node(NodeIndex i) const { return nodes_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<NodeIndex> find(const std::string& poi_id) const;

  std::span<const NodeIndex> in_neighbors(NodeIndex i) const {
    return {in_adj_.data() + in_offsets_[i], in_adj_.data() + in_offsets_[i + 1]};
  }
  std::span<const NodeIndex> out_neighbors(NodeIndex i) const {
    return {out_adj_.data() + out_offsets_[i], out_adj_.data() + out_offsets_[i + 1]};
  }

  std::size_t in_degree(NodeIndex i) const { return in_offsets_[i + 1] - in_offsets_[i]; }
  std::size_t out_degree(NodeIndex i) const {
    return out_offsets_[i + 1] - out_offsets_[i];
  }
  double in_strength(NodeIndex i) const { return in_strength_[i]; }
  double out_strength(NodeIndex i) const { return out_strength_[i]; }

  double total_weight() const;

 private:
  std::vector<PoiRecord> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeIndex> in_adj_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeIndex> out_adj_;
  std::vector<double> in_strength_;
  std::vector<double> out_strength_;
};

// One node per POI (isolates included), one edge per flow. The dataset must
// validate cleanly; otherwise ValidationError carries the report.
DependencyNetwork build_network(const PoiTable& pois, const FlowList& flows);

// Keeps edges with weight strictly greater than epsilon, then drops nodes
// left without any incident edge. Node order is preserved.
DependencyNetwork filter_subnetwork(const DependencyNetwork& net, double epsilon);

// Inverse of build_network: the POI table and flow list of `net`.
PoiTable network_pois(const DependencyNetwork& net);
FlowList network_flows(const DependencyNetwork& net);

struct GraphSummary {
  std::size_t order = 0;
  std::size_t size = 0;
  double density = 0.0;       // size / (order * (order - 1)), directed
  double transitivity = 0.0;  // 3 * triangles / connected triples, undirected projection
  double avg_degree = 0.0;    // mean of in_degree + out_degree
  double avg_strength = 0.0;  // mean of in_strength + out_strength
};

GraphSummary graph_summary(const DependencyNetwork& net);

struct NodeDegreeRecord {
  std::string poi_id;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  double in_strength = 0.0;
  double out_strength = 0.0;
  // Undefined (nullopt) when the node has no in- (resp. out-) neighbors.
  std::optional<double> avg_in_neighbor_in_degree;
  std::optional<double> avg_out_neighbor_out_degree;
};

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
};

// Logarithmically spaced bins over the strictly positive values; zeros have
// no log and are left out of the counts.
struct LogHistogram {
  std::vector<HistogramBin> bins;
  std::size_t defined = 0;  // number of values binned
};

LogHistogram log_histogram(std::span<const double> values, std::size_t bin_count);

struct DegreeProfile {
  std::vector<NodeDegreeRecord> nodes;
  LogHistogram in_degree;
  LogHistogram out_degree;
  LogHistogram in_strength;
  LogHistogram out_strength;
};

DegreeProfile degree_profile(const DependencyNetwork& net, std::size_t bin_count = 30);

}  // namespace recnet
