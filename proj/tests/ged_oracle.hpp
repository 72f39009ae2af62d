#pragma once

// Brute-force graph edit distance used as the test oracle. Enumerates
// every injective partial node map from g1 into g2 (unmapped g1 nodes
// deleted, uncovered g2 nodes inserted) and prices the full edit path
// with its own edge accounting, independent of the library's GED code.
// Feasible up to ~7 nodes per graph.

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "cfgsim/ged.hpp"
#include "cfgsim/graph.hpp"

namespace oracle {

inline double path_cost(const cfgsim::LabeledCfg& g1,
                        const cfgsim::LabeledCfg& g2,
                        const std::vector<int>& map_1to2,
                        const cfgsim::EditCostModel& costs) {
  std::set<std::pair<int, int>> e1(g1.edges.begin(), g1.edges.end());
  std::set<std::pair<int, int>> e2(g2.edges.begin(), g2.edges.end());
  std::vector<int> pre(g2.node_count(), -1);

  double total = 0.0;
  for (int u = 0; u < g1.node_count(); ++u) {
    if (map_1to2[u] < 0) {
      total += costs.node_delete;
    } else {
      pre[map_1to2[u]] = u;
      if (g1.labels[u] != g2.labels[map_1to2[u]])
        total += costs.node_substitute;
    }
  }
  for (int v = 0; v < g2.node_count(); ++v)
    if (pre[v] < 0) total += costs.node_insert;
  for (const auto& [s, d] : g1.edges) {
    const bool matched = map_1to2[s] >= 0 && map_1to2[d] >= 0 &&
                         e2.count({map_1to2[s], map_1to2[d]}) > 0;
    if (!matched) total += costs.edge_delete;
  }
  for (const auto& [s, d] : g2.edges) {
    const bool matched =
        pre[s] >= 0 && pre[d] >= 0 && e1.count({pre[s], pre[d]}) > 0;
    if (!matched) total += costs.edge_insert;
  }
  return total;
}

inline void for_each_map(const cfgsim::LabeledCfg& g1,
                         const cfgsim::LabeledCfg& g2,
                         const std::function<void(const std::vector<int>&)>& fn) {
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  std::vector<int> map_1to2(n1, -1);
  std::vector<bool> used(n2, false);
  std::function<void(int)> rec = [&](int u) {
    if (u == n1) {
      fn(map_1to2);
      return;
    }
    map_1to2[u] = -1;
    rec(u + 1);
    for (int v = 0; v < n2; ++v) {
      if (used[v]) continue;
      used[v] = true;
      map_1to2[u] = v;
      rec(u + 1);
      map_1to2[u] = -1;
      used[v] = false;
    }
  };
  rec(0);
}

inline double brute_force_ged(const cfgsim::LabeledCfg& g1,
                              const cfgsim::LabeledCfg& g2,
                              const cfgsim::EditCostModel& costs = {}) {
  double best = 1e300;
  for_each_map(g1, g2, [&](const std::vector<int>& m) {
    const double c = path_cost(g1, g2, m, costs);
    if (c < best) best = c;
  });
  return best;
}

// True when some edit path realizes exactly this cost; used to confirm
// that upper bounds returned by approximations are achievable.
inline bool achievable(const cfgsim::LabeledCfg& g1,
                       const cfgsim::LabeledCfg& g2, double cost,
                       const cfgsim::EditCostModel& costs = {}) {
  bool found = false;
  for_each_map(g1, g2, [&](const std::vector<int>& m) {
    if (!found && std::abs(path_cost(g1, g2, m, costs) - cost) < 1e-9)
      found = true;
  });
  return found;
}

}  // namespace oracle
