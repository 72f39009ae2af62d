#pragma once

#include <string>
#include <vector>

#include "cfgsim/graph.hpp"
#include "cfgsim/rng.hpp"

namespace testutil {

// Random directed graph with labels drawn from a small alphabet.
// Always satisfies the CFG invariants (no self-loops or duplicates).
inline cfgsim::LabeledCfg random_graph(cfgsim::Rng& rng, int max_nodes,
                                       double edge_prob = 0.25,
                                       int alphabet = 5) {
  static const char* kLabels[] = {"a = 0",      "b = a + 1", "if a < b",
                                  "return a",   "c = a * b", "a = a - 1",
                                  "if b == c",  "c = c & a"};
  cfgsim::LabeledCfg g;
  const int n = 1 + static_cast<int>(rng.below(max_nodes));
  for (int i = 0; i < n; ++i)
    g.labels.push_back(kLabels[rng.below(std::min(alphabet, 8))]);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      if (s != d && rng.uniform() < edge_prob) g.edges.push_back({s, d});
  return g;
}

inline cfgsim::LabeledCfg path_graph(const std::vector<std::string>& labels) {
  cfgsim::LabeledCfg g;
  g.labels = labels;
  for (int i = 0; i + 1 < static_cast<int>(labels.size()); ++i)
    g.edges.push_back({i, i + 1});
  return g;
}

}  // namespace testutil
