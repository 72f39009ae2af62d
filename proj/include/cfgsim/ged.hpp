#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <string>
#include <vector>

#include "cfgsim/assignment.hpp"
#include "cfgsim/errors.hpp"
#include "cfgsim/graph.hpp"

namespace cfgsim {

// Costs of the atomic edit operations. Substituting a node whose label
// already matches is free; all other operations charge their listed cost.
struct EditCostModel {
  double node_insert = 1.0;
  double node_delete = 1.0;
  double node_substitute = 1.0;
  double edge_insert = 1.0;
  double edge_delete = 1.0;

  double substitution(const std::string& a, const std::string& b) const {
    return a == b ? 0.0 : node_substitute;
  }

  void check() const {
    if (node_insert < 0 || node_delete < 0 || node_substitute < 0 ||
        edge_insert < 0 || edge_delete < 0)
      throw DataError("edit costs must be non-negative");
  }

  EditCostModel reversed() const {
    EditCostModel r = *this;
    std::swap(r.node_insert, r.node_delete);
    std::swap(r.edge_insert, r.edge_delete);
    return r;
  }
};

enum class GedKind { exact, upper_bound, lower_bound };

enum class Provenance { exact, lsap, hed };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::lsap: return "lsap";
    case Provenance::hed: return "hed";
  }
  return "?";
}

inline Provenance provenance_from_string(const std::string& s) {
  if (s == "exact") return Provenance::exact;
  if (s == "lsap") return Provenance::lsap;
  if (s == "hed") return Provenance::hed;
  throw DataError("unknown provenance '" + s + "'");
}

struct GedResult {
  double distance = 0.0;
  GedKind kind = GedKind::exact;
  long long expanded_states = 0;  // populated by the exact search only
  std::chrono::duration<double> elapsed{0.0};
};

// Maps an edit distance into (0, 1]: exp(-2*ged / (n1 + n2)).
inline double normalize_similarity(double ged, int n1, int n2) {
  if (ged < 0) throw DataError("normalize_similarity: negative ged");
  if (n1 < 1 || n2 < 1)
    throw DataError("normalize_similarity: node counts must be >= 1");
  return std::exp(-2.0 * ged / (static_cast<double>(n1) + n2));
}

namespace detail {

constexpr std::uint64_t edge_key(int s, int d) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s)) << 32) |
         static_cast<std::uint32_t>(d);
}

struct EdgeSet {
  std::vector<std::uint64_t> keys;  // sorted

  explicit EdgeSet(const LabeledCfg& g) {
    keys.reserve(g.edges.size());
    for (const auto& [s, d] : g.edges) keys.push_back(edge_key(s, d));
    std::sort(keys.begin(), keys.end());
  }

  bool has(int s, int d) const {
    return std::binary_search(keys.begin(), keys.end(), edge_key(s, d));
  }
};

struct DegreeTable {
  std::vector<int> out, in;

  explicit DegreeTable(const LabeledCfg& g)
      : out(g.node_count(), 0), in(g.node_count(), 0) {
    for (const auto& [s, d] : g.edges) {
      ++out[s];
      ++in[d];
    }
  }
};

// Node-only assignment lower bound over the unmapped remainder of both
// graphs. Ignoring edge costs keeps it admissible for the exact search.
inline double node_lsap_bound(const std::vector<const std::string*>& rest1,
                              const std::vector<const std::string*>& rest2,
                              const EditCostModel& costs) {
  const int r1 = static_cast<int>(rest1.size());
  const int r2 = static_cast<int>(rest2.size());
  const int n = r1 + r2;
  if (n == 0) return 0.0;
  const double big = 1e15;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r2; ++j)
      m[i][j] = costs.substitution(*rest1[i], *rest2[j]);
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r1; ++j)
      m[i][r2 + j] = (i == j) ? costs.node_delete : big;
  for (int i = 0; i < r2; ++i)
    for (int j = 0; j < r2; ++j)
      m[r1 + i][j] = (i == j) ? costs.node_insert : big;
  return solve_assignment(m).cost;
}

// Canonical ordering key so approximations evaluate a pair identically
// regardless of argument order.
inline bool canonical_before(const LabeledCfg& a, const LabeledCfg& b) {
  if (a.node_count() != b.node_count()) return a.node_count() < b.node_count();
  if (a.labels != b.labels) return a.labels < b.labels;
  return a.edges <= b.edges;
}

}  // namespace detail

// Exact graph edit distance via A* over partial node maps. Nodes of g1
// are placed in index order; each step maps the next node onto an unused
// g2 node or deletes it, and leaves insert whatever remains of g2. The
// heuristic is the node-only assignment bound, so results are optimal.
// Throws BudgetExhausted (carrying the best proven lower bound) once
// `budget` states have been expanded or the state pool reaches 8x budget.
inline GedResult exact_ged(const LabeledCfg& g1, const LabeledCfg& g2,
                           const EditCostModel& costs = {},
                           long long budget = 10'000'000) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(g1, "exact_ged g1");
  require_valid(g2, "exact_ged g2");
  costs.check();
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  if (n1 > 64 || n2 > 64)
    throw DataError("exact_ged: graphs above 64 nodes are not supported");

  // Directed adjacency as bitmasks; bit u' of fwd[u] means edge (u, u').
  auto masks = [](const LabeledCfg& g) {
    std::vector<std::uint64_t> fwd(g.node_count(), 0), bwd(g.node_count(), 0);
    for (const auto& [s, d] : g.edges) {
      fwd[s] |= std::uint64_t{1} << d;
      bwd[d] |= std::uint64_t{1} << s;
    }
    return std::pair{fwd, bwd};
  };
  const auto [fwd1, bwd1] = masks(g1);
  const auto [fwd2, bwd2] = masks(g2);
  const int e2_total = g2.edge_count();

  struct State {
    double g;
    double h;
    std::uint64_t used;
    int parent;
    std::int16_t depth;
    std::int16_t last;  // g2 id mapped to g1 node depth-1; -1 deleted
  };
  struct HeapItem {
    double f;
    double h;
    std::uint64_t order;
    int idx;
    bool operator>(const HeapItem& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return order > o.order;
    }
  };

  std::vector<State> pool;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> open;
  std::uint64_t order = 0;
  // Memory guard: stored states outgrow expansions by the branching
  // factor, so cap the pool well before it can exhaust desk-scale RAM.
  const long long pool_cap =
      std::min<long long>(budget < (1LL << 40) ? budget * 8 : budget,
                          16'000'000);

  // With uniform node costs the node-only assignment bound collapses to
  // max(r1, r2) - |label multiset intersection|, which avoids running an
  // assignment solve per generated state.
  const bool uniform_nodes = costs.node_insert == costs.node_delete &&
                             costs.node_delete == costs.node_substitute;
  std::vector<int> lab1(n1), lab2(n2);
  int distinct_labels = 0;
  {
    std::unordered_map<std::string, int> ids;
    auto id_of = [&](const std::string& s) {
      return ids.emplace(s, static_cast<int>(ids.size())).first->second;
    };
    for (int u = 0; u < n1; ++u) lab1[u] = id_of(g1.labels[u]);
    for (int v = 0; v < n2; ++v) lab2[v] = id_of(g2.labels[v]);
    distinct_labels = static_cast<int>(ids.size());
  }
  std::vector<int> count1(distinct_labels);

  auto heuristic = [&](int depth, std::uint64_t used) {
    if (uniform_nodes) {
      std::fill(count1.begin(), count1.end(), 0);
      const int r1 = n1 - depth;
      for (int u = depth; u < n1; ++u) ++count1[lab1[u]];
      int r2 = 0, matched = 0;
      for (int v = 0; v < n2; ++v) {
        if (used >> v & 1) continue;
        ++r2;
        if (count1[lab2[v]] > 0) {
          --count1[lab2[v]];
          ++matched;
        }
      }
      return (std::max(r1, r2) - matched) * costs.node_substitute;
    }
    std::vector<const std::string*> rest1, rest2;
    for (int u = depth; u < n1; ++u) rest1.push_back(&g1.labels[u]);
    for (int v = 0; v < n2; ++v)
      if (!(used >> v & 1)) rest2.push_back(&g2.labels[v]);
    return detail::node_lsap_bound(rest1, rest2, costs);
  };

  auto push = [&](State s) {
    const int idx = static_cast<int>(pool.size());
    pool.push_back(s);
    open.push({s.g + s.h, s.h, order++, idx});
  };

  // Completion cost once every g1 node is placed: remaining g2 nodes are
  // inserted along with every g2 edge not matched during the search.
  auto completion = [&](std::uint64_t used) {
    double c = 0.0;
    int used_both = 0;
    for (const auto& [s, d] : g2.edges)
      if ((used >> s & 1) && (used >> d & 1)) ++used_both;
    c += (e2_total - used_both) * costs.edge_insert;
    for (int v = 0; v < n2; ++v)
      if (!(used >> v & 1)) c += costs.node_insert;
    return c;
  };

  push({0.0, heuristic(0, 0), 0, -1, 0, -2});

  std::vector<std::int16_t> amap(n1, -1);
  long long expanded = 0;

  while (!open.empty()) {
    const HeapItem top = open.top();
    const State st = pool[top.idx];
    if (expanded >= budget ||
        static_cast<long long>(pool.size()) >= pool_cap) {
      throw BudgetExhausted("exact_ged: budget exhausted", top.f, expanded);
    }
    open.pop();
    ++expanded;

    if (st.depth == n1) {
      GedResult r;
      r.distance = st.g;
      r.kind = GedKind::exact;
      r.expanded_states = expanded;
      r.elapsed = std::chrono::steady_clock::now() - start;
      return r;
    }

    // Recover the partial map by walking the parent chain.
    {
      int idx = top.idx;
      while (idx >= 0) {
        const State& s = pool[idx];
        if (s.depth > 0) amap[s.depth - 1] = s.last;
        idx = s.parent;
      }
    }

    const int u = st.depth;

    // Edge cost of placing u as v (or deleting it when v < 0) against
    // all previously placed g1 nodes.
    auto edge_delta = [&](int v) {
      double c = 0.0;
      for (int up = 0; up < st.depth; ++up) {
        const bool e1f = fwd1[u] >> up & 1;
        const bool e1b = bwd1[u] >> up & 1;
        if (!e1f && !e1b && v < 0) continue;
        const int vp = amap[up];
        if (v < 0 || vp < 0) {
          if (e1f) c += costs.edge_delete;
          if (e1b) c += costs.edge_delete;
          continue;
        }
        const bool e2f = fwd2[v] >> vp & 1;
        const bool e2b = bwd2[v] >> vp & 1;
        if (e1f != e2f) c += e1f ? costs.edge_delete : costs.edge_insert;
        if (e1b != e2b) c += e1b ? costs.edge_delete : costs.edge_insert;
      }
      return c;
    };

    for (int v = 0; v < n2; ++v) {
      if (st.used >> v & 1) continue;
      const std::uint64_t used = st.used | (std::uint64_t{1} << v);
      double g = st.g + costs.substitution(g1.labels[u], g2.labels[v]) +
                 edge_delta(v);
      double h;
      if (st.depth + 1 == n1) {
        g += completion(used);
        h = 0.0;
      } else {
        h = heuristic(st.depth + 1, used);
      }
      push({g, h, used, top.idx, static_cast<std::int16_t>(st.depth + 1),
            static_cast<std::int16_t>(v)});
    }
    {
      double g = st.g + costs.node_delete + edge_delta(-1);
      double h;
      if (st.depth + 1 == n1) {
        g += completion(st.used);
        h = 0.0;
      } else {
        h = heuristic(st.depth + 1, st.used);
      }
      push({g, h, st.used, top.idx, static_cast<std::int16_t>(st.depth + 1),
            std::int16_t{-1}});
    }
  }

  throw NumericError("exact_ged: search space exhausted without a goal");
}

namespace detail {

// True cost of the complete edit path induced by a node map.
inline double induced_path_cost(const LabeledCfg& g1, const LabeledCfg& g2,
                                const std::vector<int>& map_1to2,
                                const EditCostModel& costs) {
  const int n2 = g2.node_count();
  std::vector<int> pre(n2, -1);
  double c = 0.0;
  for (int u = 0; u < g1.node_count(); ++u) {
    const int v = map_1to2[u];
    if (v < 0) {
      c += costs.node_delete;
    } else {
      pre[v] = u;
      c += costs.substitution(g1.labels[u], g2.labels[v]);
    }
  }
  for (int v = 0; v < n2; ++v)
    if (pre[v] < 0) c += costs.node_insert;

  const EdgeSet e2(g2);
  const EdgeSet e1(g1);
  for (const auto& [s, d] : g1.edges) {
    const int vs = map_1to2[s], vd = map_1to2[d];
    if (vs < 0 || vd < 0 || !e2.has(vs, vd)) c += costs.edge_delete;
  }
  for (const auto& [s, d] : g2.edges) {
    const int us = pre[s], ud = pre[d];
    if (us < 0 || ud < 0 || !e1.has(us, ud)) c += costs.edge_insert;
  }
  return c;
}

inline GedResult lsap_upper_directed(const LabeledCfg& g1,
                                     const LabeledCfg& g2,
                                     const EditCostModel& costs) {
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  const DegreeTable d1(g1), d2(g2);
  const double big = 1e15;
  const int n = n1 + n2;

  // Riesen-Bunke square matrix: substitutions carry a local edge-structure
  // estimate (directed degrees compared separately), deletions/insertions
  // pay for their incident edges.
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      double c = costs.substitution(g1.labels[i], g2.labels[j]);
      c += costs.edge_delete * std::max(0, d1.out[i] - d2.out[j]);
      c += costs.edge_insert * std::max(0, d2.out[j] - d1.out[i]);
      c += costs.edge_delete * std::max(0, d1.in[i] - d2.in[j]);
      c += costs.edge_insert * std::max(0, d2.in[j] - d1.in[i]);
      m[i][j] = c;
    }
  }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      m[i][n2 + j] =
          (i == j)
              ? costs.node_delete + costs.edge_delete * (d1.out[i] + d1.in[i])
              : big;
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j)
      m[n1 + i][j] =
          (i == j)
              ? costs.node_insert + costs.edge_insert * (d2.out[j] + d2.in[j])
              : big;

  const auto assignment = solve_assignment(m);
  std::vector<int> map_1to2(n1, -1);
  for (int i = 0; i < n1; ++i)
    if (assignment.row_to_col[i] < n2) map_1to2[i] = assignment.row_to_col[i];

  GedResult r;
  r.distance = induced_path_cost(g1, g2, map_1to2, costs);
  r.kind = GedKind::upper_bound;
  return r;
}

}  // namespace detail

// Bipartite upper bound: assignment over the Riesen-Bunke cost matrix,
// then the true cost of the edit path the assignment implies. The pair
// is put into a canonical order first (with insert/delete costs swapped
// accordingly) so both argument orders return the same value.
inline GedResult lsap_ged_upper(const LabeledCfg& g1, const LabeledCfg& g2,
                                const EditCostModel& costs = {}) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(g1, "lsap_ged_upper g1");
  require_valid(g2, "lsap_ged_upper g2");
  costs.check();
  GedResult r = detail::canonical_before(g1, g2)
                    ? detail::lsap_upper_directed(g1, g2, costs)
                    : detail::lsap_upper_directed(g2, g1, costs.reversed());
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

// Hausdorff lower bound: every node picks its cheapest counterpart
// independently, substitution contributions halved since they are seen
// from both sides, incident-edge contributions halved again because
// each edge is shared between two endpoints.
inline GedResult hed_ged_lower(const LabeledCfg& g1, const LabeledCfg& g2,
                               const EditCostModel& costs = {}) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(g1, "hed_ged_lower g1");
  require_valid(g2, "hed_ged_lower g2");
  costs.check();
  const detail::DegreeTable d1(g1), d2(g2);

  // Hausdorff cost between two unlabeled edge sets of the given sizes:
  // nonzero only when one side has nothing to match against.
  auto edge_sets = [&](int a, int b, double cdel, double cins) {
    double c = 0.0;
    if (b == 0) c += a * cdel;
    if (a == 0) c += b * cins;
    return c;
  };
  auto sub_term = [&](int u, int v) {
    const double edges =
        edge_sets(d1.out[u], d2.out[v], costs.edge_delete, costs.edge_insert) +
        edge_sets(d1.in[u], d2.in[v], costs.edge_delete, costs.edge_insert);
    return (costs.substitution(g1.labels[u], g2.labels[v]) + edges / 2.0) /
           2.0;
  };

  double total = 0.0;
  for (int u = 0; u < g1.node_count(); ++u) {
    double best =
        costs.node_delete + (d1.out[u] + d1.in[u]) * costs.edge_delete / 2.0;
    for (int v = 0; v < g2.node_count(); ++v)
      best = std::min(best, sub_term(u, v));
    total += best;
  }
  for (int v = 0; v < g2.node_count(); ++v) {
    double best =
        costs.node_insert + (d2.out[v] + d2.in[v]) * costs.edge_insert / 2.0;
    for (int u = 0; u < g1.node_count(); ++u)
      best = std::min(best, sub_term(u, v));
    total += best;
  }

  GedResult r;
  r.distance = total;
  r.kind = GedKind::lower_bound;
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

// Ground-truth policy: exact for small pairs, bipartite upper bound
// otherwise. Budget errors from the exact route propagate unchanged.
inline GedResult ground_truth_ged(const LabeledCfg& g1, const LabeledCfg& g2,
                                  const EditCostModel& costs = {},
                                  int exact_node_limit = 10,
                                  long long budget = 10'000'000) {
  if (std::max(g1.node_count(), g2.node_count()) <= exact_node_limit)
    return exact_ged(g1, g2, costs, budget);
  return lsap_ged_upper(g1, g2, costs);
}

inline Provenance provenance_of(GedKind kind) {
  switch (kind) {
    case GedKind::exact: return Provenance::exact;
    case GedKind::upper_bound: return Provenance::lsap;
    case GedKind::lower_bound: return Provenance::hed;
  }
  return Provenance::exact;
}

}  // namespace cfgsim
