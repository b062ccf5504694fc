#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recnet/network.hpp"

namespace recnet {

// Per-node activation thresholds in [0, 1], indexed like the network nodes.
class ThresholdVector {
 public:
  ThresholdVector() = default;
  // Throws ValidationError if any entry is outside [0, 1] or not finite.
  explicit ThresholdVector(std::vector<double> theta);

  std::size_t size() const { return theta_.size(); }
  double operator[](std::size_t i) const { return theta_[i]; }
  const std::vector<double>& values() const { return theta_; }

  bool operator==(const ThresholdVector&) const = default;

 private:
  std::vector<double> theta_;
};

// Sorted, duplicate-free node indices.
class SeedSet {
 public:
  SeedSet() = default;
  // Sorts and removes duplicates.
  explicit SeedSet(std::vector<NodeIndex> nodes);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeIndex i) const;
  const std::vector<NodeIndex>& nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  bool operator==(const SeedSet&) const = default;
  auto operator<=>(const SeedSet&) const = default;

 private:
  std::vector<NodeIndex> nodes_;
};

// Which neighbors exert influence on a node. Recovery follows incoming
// visitation flows by default: a POI depends on its predecessors.
enum class InfluenceDirection { kIncoming, kOutgoing };

using StateVector = std::vector<std::uint8_t>;

// Recorded run of the progressive threshold dynamics over weeks 0..T, where
// week 0 is the seed state. Stored as per-node activation weeks, which makes
// the trace row-monotone by construction.
class DiffusionTrace {
 public:
  static constexpr int kNever = -1;

  DiffusionTrace(int horizon, std::vector<int> activation_week,
                 std::optional<int> fixed_point_week);

  int horizon() const { return horizon_; }
  std::size_t order() const { return activation_week_.size(); }

  // Week the node became active (0 for seeds) or kNever.
  int activation_week(NodeIndex i) const { return activation_week_[i]; }
  const std::vector<int>& activation_weeks() const { return activation_week_; }

  bool active(NodeIndex i, int week) const {
    const int w = activation_week_[i];
    return w != kNever && w <= week;
  }
  StateVector state(int week) const;

  // First week t with step(state(t)) == state(t), if reached by week T.
  std::optional<int> fixed_point_week() const { return fixed_point_week_; }

 private:
  int horizon_;
  std::vector<int> activation_week_;
  std::optional<int> fixed_point_week_;
};

// One synchronous update. Active nodes stay active; an inactive node with
// d > 0 influencing neighbors activates iff active_neighbors / d >= theta.
// Nodes with no influencing neighbors never activate on their own.
StateVector step(const DependencyNetwork& net, std::span<const std::uint8_t> current,
                 const ThresholdVector& theta,
                 InfluenceDirection direction = InfluenceDirection::kIncoming);

// Applies `step` T times from the seed state. Stops early at a fixed point;
// later weeks repeat it.
DiffusionTrace simulate(const DependencyNetwork& net, const SeedSet& seeds,
                        const ThresholdVector& theta, int horizon,
                        InfluenceDirection direction = InfluenceDirection::kIncoming);

// Number of nodes active at week T.
std::size_t final_active_count(const DiffusionTrace& trace);

}  // namespace recnet
