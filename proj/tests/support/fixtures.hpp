#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "recnet/diffusion.hpp"
#include "recnet/network.hpp"
#include "recnet/rng.hpp"

namespace recnet::testing {

inline PoiRecord poi(std::string id, Sector sector = Sector::kRetail, double income = 50000.0) {
  PoiRecord p;
  p.poi_id = std::move(id);
  p.sector = sector;
  p.latitude = 29.5;
  p.longitude = -90.0;
  p.block_group_id = "bg0";
  p.median_income = income;
  return p;
}

// Network over named nodes with (origin, destination, weight) edges.
inline DependencyNetwork named_network(
    const std::vector<std::string>& names,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  std::vector<PoiRecord> nodes;
  for (const auto& n : names) nodes.push_back(poi(n));
  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == id) return static_cast<NodeIndex>(i);
    }
    throw std::runtime_error("unknown node " + id);
  };
  std::vector<Edge> out;
  for (const auto& [a, b, w] : edges) out.push_back({index(a), index(b), w});
  return DependencyNetwork(std::move(nodes), std::move(out));
}

// Random simple digraph: each ordered pair present with probability p.
inline DependencyNetwork random_network(std::size_t n, double p, Rng& rng,
                                        double max_weight = 30.0) {
  std::vector<PoiRecord> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(poi("n" + std::to_string(i)));
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && rng.bernoulli(p)) {
        // Integer-ish weights so ties at epsilon occur.
        const double w = static_cast<double>(rng.below(static_cast<std::uint64_t>(max_weight)) + 1);
        edges.push_back({static_cast<NodeIndex>(a), static_cast<NodeIndex>(b), w});
      }
    }
  }
  return DependencyNetwork(std::move(nodes), std::move(edges));
}

inline ThresholdVector random_theta(std::size_t n, Rng& rng) {
  std::vector<double> theta(n);
  // Mix in exact zeros, ones and simple fractions to hit the >= boundary.
  for (auto& t : theta) {
    switch (rng.below(5)) {
      case 0: t = 0.0; break;
      case 1: t = 1.0; break;
      case 2: t = static_cast<double>(rng.below(4) + 1) / 4.0; break;
      default: t = rng.uniform(); break;
    }
  }
  return ThresholdVector(std::move(theta));
}

inline SeedSet random_seeds(std::size_t n, Rng& rng, double p = 0.2) {
  std::vector<NodeIndex> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(p)) seeds.push_back(static_cast<NodeIndex>(i));
  }
  return SeedSet(std::move(seeds));
}

}  // namespace recnet::testing
