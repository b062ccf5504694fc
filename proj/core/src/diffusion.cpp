#include "recnet/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "recnet/error.hpp"

namespace recnet {

namespace {

std::span<const NodeIndex> influencers(const DependencyNetwork& net, NodeIndex i,
                                       InfluenceDirection direction) {
  return direction == InfluenceDirection::kIncoming ? net.in_neighbors(i)
                                                    : net.out_neighbors(i);
}

std::span<const NodeIndex> influenced(const DependencyNetwork& net, NodeIndex i,
                                      InfluenceDirection direction) {
  return direction == InfluenceDirection::kIncoming ? net.out_neighbors(i)
                                                    : net.in_neighbors(i);
}

bool meets_threshold(std::size_t active, std::size_t degree, double theta) {
  return static_cast<double>(active) / static_cast<double>(degree) >= theta;
}

void check_theta(const DependencyNetwork& net, const ThresholdVector& theta) {
  if (theta.size() != net.order()) {
    throw ValidationError("diffusion: threshold vector length " +
                          std::to_string(theta.size()) + " != network order " +
                          std::to_string(net.order()));
  }
}

}  // namespace

ThresholdVector::ThresholdVector(std::vector<double> theta) : theta_(std::move(theta)) {
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (!(theta_[i] >= 0.0 && theta_[i] <= 1.0)) {
      throw ValidationError("threshold " + std::to_string(i) + " outside [0, 1]");
    }
  }
}

SeedSet::SeedSet(std::vector<NodeIndex> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

bool SeedSet::contains(NodeIndex i) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), i);
}

DiffusionTrace::DiffusionTrace(int horizon, std::vector<int> activation_week,
                               std::optional<int> fixed_point_week)
    : horizon_(horizon),
      activation_week_(std::move(activation_week)),
      fixed_point_week_(fixed_point_week) {}

StateVector DiffusionTrace::state(int week) const {
  StateVector s(order());
  for (std::size_t i = 0; i < order(); ++i) s[i] = active(static_cast<NodeIndex>(i), week);
  return s;
}

StateVector step(const DependencyNetwork& net, std::span<const std::uint8_t> current,
                 const ThresholdVector& theta, InfluenceDirection direction) {
  if (current.size() != net.order()) {
    throw ValidationError("diffusion: state length " + std::to_string(current.size()) +
                          " != network order " + std::to_string(net.order()));
  }
  check_theta(net, theta);
  StateVector next(current.begin(), current.end());
  for (std::size_t i = 0; i < net.order(); ++i) {
    if (current[i]) continue;
    const auto nbrs = influencers(net, static_cast<NodeIndex>(i), direction);
    if (nbrs.empty()) continue;
    std::size_t active = 0;
    for (auto u : nbrs) active += current[u] ? 1 : 0;
    if (meets_threshold(active, nbrs.size(), theta[i])) next[i] = 1;
  }
  return next;
}

DiffusionTrace simulate(const DependencyNetwork& net, const SeedSet& seeds,
                        const ThresholdVector& theta, int horizon,
                        InfluenceDirection direction) {
  if (horizon < 1) throw ValidationError("diffusion: horizon must be >= 1");
  check_theta(net, theta);
  const std::size_t n = net.order();
  std::vector<int> week(n, DiffusionTrace::kNever);
  for (auto s : seeds) {
    if (s >= n) {
      throw ValidationError("diffusion: seed index " + std::to_string(s) +
                            " out of range for order " + std::to_string(n));
    }
    week[s] = 0;
  }

  // active_nbrs[i] counts active influencers of i in the current state.
  std::vector<std::uint32_t> active_nbrs(n, 0);
  std::vector<NodeIndex> frontier(seeds.begin(), seeds.end());
  for (auto s : frontier) {
    for (auto v : influenced(net, s, direction)) ++active_nbrs[v];
  }

  // Week 1 must look at every node (theta = 0 activates without active
  // influencers); afterwards only nodes whose count changed can flip.
  std::vector<NodeIndex> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = static_cast<NodeIndex>(i);
  std::vector<std::uint8_t> queued(n, 0);
  std::vector<NodeIndex> activated;

  auto evaluate = [&](const std::vector<NodeIndex>& nodes) {
    activated.clear();
    for (auto i : nodes) {
      if (week[i] != DiffusionTrace::kNever) continue;
      const std::size_t degree = influencers(net, i, direction).size();
      if (degree == 0) continue;
      if (meets_threshold(active_nbrs[i], degree, theta[i])) activated.push_back(i);
    }
  };

  std::optional<int> fixed_point;
  for (int t = 1; t <= horizon + 1; ++t) {
    evaluate(candidates);
    if (activated.empty()) {
      fixed_point = t - 1;
      break;
    }
    if (t == horizon + 1) break;  // probe beyond T found changes: no fixed point
    for (auto i : activated) week[i] = t;
    candidates.clear();
    for (auto i : activated) {
      for (auto v : influenced(net, i, direction)) {
        ++active_nbrs[v];
        if (!queued[v] && week[v] == DiffusionTrace::kNever) {
          queued[v] = 1;
          candidates.push_back(v);
        }
      }
    }
    for (auto v : candidates) queued[v] = 0;
  }
  return DiffusionTrace(horizon, std::move(week), fixed_point);
}

std::size_t final_active_count(const DiffusionTrace& trace) {
  return static_cast<std::size_t>(
      std::count_if(trace.activation_weeks().begin(), trace.activation_weeks().end(),
                    [](int w) { return w != DiffusionTrace::kNever; }));
}

}  // namespace recnet
