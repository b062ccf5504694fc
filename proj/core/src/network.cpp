#include "recnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "recnet/error.hpp"

namespace recnet {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool incoming,
               std::vector<std::size_t>& offsets, std::vector<NodeIndex>& adj) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[(incoming ? e.destination : e.origin) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  adj.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    const NodeIndex key = incoming ? e.destination : e.origin;
    adj[cursor[key]++] = incoming ? e.origin : e.destination;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              adj.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

DependencyNetwork::DependencyNetwork(std::vector<PoiRecord> nodes,
                                     std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(nodes_[i].poi_id, static_cast<NodeIndex>(i)).second) {
      throw ValidationError("network: duplicate poi_id '" + nodes_[i].poi_id + "'");
    }
  }
  in_strength_.assign(n, 0.0);
  out_strength_.assign(n, 0.0);
  for (const auto& e : edges_) {
    if (e.origin >= n || e.destination >= n) {
      throw ValidationError("network: edge endpoint out of range");
    }
    if (e.origin == e.destination) {
      throw ValidationError("network: self-loop on '" + nodes_[e.origin].poi_id + "'");
    }
    if (!(e.weight >= 0.0)) {
      throw ValidationError("network: negative edge weight");
    }
    out_strength_[e.origin] += e.weight;
    in_strength_[e.destination] += e.weight;
  }
  build_csr(n, edges_, false, out_offsets_, out_adj_);
  build_csr(n, edges_, true, in_offsets_, in_adj_);
  for (std::size_t i = 0; i < n; ++i) {
    auto nbrs = out_neighbors(static_cast<NodeIndex>(i));
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw ValidationError("network: parallel edges from '" + nodes_[i].poi_id + "'");
    }
  }
}

std::optional<NodeIndex> DependencyNetwork::find(const std::string& poi_id) const {
  auto it = index_.find(poi_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double DependencyNetwork::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

DependencyNetwork build_network(const PoiTable& pois, const FlowList& flows) {
  const auto report = validate_dataset(pois, flows, nullptr);
  if (!report.ok()) {
    throw ValidationError("network: dataset failed validation:\n" + report.describe());
  }
  std::vector<Edge> edges;
  edges.reserve(flows.size());
  for (const auto& flow : flows) {
    edges.push_back({static_cast<NodeIndex>(*pois.find(flow.origin)),
                     static_cast<NodeIndex>(*pois.find(flow.destination)),
                     flow.avg_weekly_visits});
  }
  return DependencyNetwork(pois.records(), std::move(edges));
}

DependencyNetwork filter_subnetwork(const DependencyNetwork& net, double epsilon) {
  std::vector<char> keep(net.order(), 0);
  std::vector<Edge> kept;
  for (const auto& e : net.edges()) {
    if (e.weight > epsilon) {
      kept.push_back(e);
      keep[e.origin] = 1;
      keep[e.destination] = 1;
    }
  }
  std::vector<NodeIndex> remap(net.order(), 0);
  std::vector<PoiRecord> nodes;
  for (std::size_t i = 0; i < net.order(); ++i) {
    if (keep[i]) {
      remap[i] = static_cast<NodeIndex>(nodes.size());
      nodes.push_back(net.node(static_cast<NodeIndex>(i)));
    }
  }
  for (auto& e : kept) {
    e.origin = remap[e.origin];
    e.destination = remap[e.destination];
  }
  return DependencyNetwork(std::move(nodes), std::move(kept));
}

PoiTable network_pois(const DependencyNetwork& net) { return PoiTable(net.nodes()); }

FlowList network_flows(const DependencyNetwork& net) {
  FlowList flows;
  flows.reserve(net.size());
  for (const auto& e : net.edges()) {
    flows.push_back({net.node(e.origin).poi_id, net.node(e.destination).poi_id,
                     e.weight});
  }
  return flows;
}

GraphSummary graph_summary(const DependencyNetwork& net) {
  GraphSummary s;
  s.order = net.order();
  s.size = net.size();
  const std::size_t n = s.order;
  if (n >= 2) {
    s.density = static_cast<double>(s.size) / (static_cast<double>(n) * (n - 1));
  }
  if (n == 0) return s;

  // Undirected simple projection: union of in- and out-neighbors.
  std::vector<std::vector<NodeIndex>> undirected(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeIndex>(i);
    auto& nb = undirected[i];
    auto in = net.in_neighbors(v);
    auto out = net.out_neighbors(v);
    std::set_union(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(nb));
  }
  // closed counts each triangle once per corner (3x triangles); triples
  // counts connected triples centered at each node.
  std::uint64_t closed = 0;
  std::uint64_t triples = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = undirected[v];
    const std::uint64_t d = nb.size();
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
    for (std::size_t a = 0; a < nb.size(); ++a) {
      const auto& na = undirected[nb[a]];
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (std::binary_search(na.begin(), na.end(), nb[b])) ++closed;
      }
    }
  }
  s.transitivity = triples == 0 ? 0.0
                                : static_cast<double>(closed) / static_cast<double>(triples);

  s.avg_degree = 2.0 * static_cast<double>(s.size) / static_cast<double>(n);
  double strength = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    strength += net.in_strength(static_cast<NodeIndex>(i)) +
                net.out_strength(static_cast<NodeIndex>(i));
  }
  s.avg_strength = strength / static_cast<double>(n);
  return s;
}

LogHistogram log_histogram(std::span<const double> values, std::size_t bin_count) {
  LogHistogram hist;
  if (bin_count == 0) bin_count = 1;
  double lo = 0.0;
  double hi = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) continue;
    if (hist.defined == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ++hist.defined;
  }
  if (hist.defined == 0) return hist;
  if (lo == hi) {
    hist.bins.push_back({lo, hi, hist.defined});
    return hist;
  }
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(bin_count);
  hist.bins.resize(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) {
    hist.bins[b].low = b == 0 ? lo : std::exp(log_lo + step * static_cast<double>(b));
    hist.bins[b].high =
        b + 1 == bin_count ? hi : std::exp(log_lo + step * static_cast<double>(b + 1));
  }
  for (double v : values) {
    if (!(v > 0.0)) continue;
    auto b = static_cast<std::size_t>((std::log(v) - log_lo) / step);
    b = std::min(b, bin_count - 1);
    // Nudge across edges where exp/log rounding disagrees with the bin bounds.
    while (b > 0 && v < hist.bins[b].low) --b;
    while (b + 1 < bin_count && v >= hist.bins[b + 1].low) ++b;
    ++hist.bins[b].count;
  }
  return hist;
}

DegreeProfile degree_profile(const DependencyNetwork& net, std::size_t bin_count) {
  DegreeProfile profile;
  const std::size_t n = net.order();
  profile.nodes.resize(n);
  std::vector<double> in_deg(n), out_deg(n), in_str(n), out_str(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeIndex>(i);
    auto& rec = profile.nodes[i];
    rec.poi_id = net.node(v).poi_id;
    rec.in_degree = net.in_degree(v);
    rec.out_degree = net.out_degree(v);
    rec.in_strength = net.in_strength(v);
    rec.out_strength = net.out_strength(v);
    if (rec.in_degree > 0) {
      std::size_t total = 0;
      for (auto u : net.in_neighbors(v)) total += net.in_degree(u);
      rec.avg_in_neighbor_in_degree =
          static_cast<double>(total) / static_cast<double>(rec.in_degree);
    }
    if (rec.out_degree > 0) {
      std::size_t total = 0;
      for (auto u : net.out_neighbors(v)) total += net.out_degree(u);
      rec.avg_out_neighbor_out_degree =
          static_cast<double>(total) / static_cast<double>(rec.out_degree);
    }
    in_deg[i] = static_cast<double>(rec.in_degree);
    out_deg[i] = static_cast<double>(rec.out_degree);
    in_str[i] = rec.in_strength;
    out_str[i] = rec.out_strength;
  }
  profile.in_degree = log_histogram(in_deg, bin_count);
  profile.out_degree = log_histogram(out_deg, bin_count);
  profile.in_strength = log_histogram(in_str, bin_count);
  profile.out_strength = log_histogram(out_str, bin_count);
  return profile;
}

}  // namespace recnet
