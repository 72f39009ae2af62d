#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfgsim/errors.hpp"

namespace cfgsim {

// Control flow graph with one canonical statement label per node.
// Node ids are dense 0..N-1; edges are directed and unlabeled.
// Immutable by convention after construction.
struct LabeledCfg {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;

  int node_count() const { return static_cast<int>(labels.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  bool operator==(const LabeledCfg& other) const = default;
};

// Returns every invariant violation; empty means the graph is valid.
inline std::vector<std::string> validate_cfg(const LabeledCfg& g) {
  std::vector<std::string> violations;
  const int n = g.node_count();
  if (n < 1) violations.push_back("graph has no nodes");
  for (int v = 0; v < n; ++v) {
    if (g.labels[v].empty())
      violations.push_back("empty label on node " + std::to_string(v));
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [s, d] : g.edges) {
    if (s < 0 || s >= n || d < 0 || d >= n) {
      violations.push_back("dangling edge (" + std::to_string(s) + "," +
                           std::to_string(d) + ")");
      continue;
    }
    if (s == d)
      violations.push_back("self-loop on node " + std::to_string(s));
    if (!seen.insert({s, d}).second)
      violations.push_back("duplicate edge (" + std::to_string(s) + "," +
                           std::to_string(d) + ")");
  }
  return violations;
}

inline void require_valid(const LabeledCfg& g, const std::string& what) {
  auto violations = validate_cfg(g);
  if (violations.empty()) return;
  std::string msg = what + ": invalid graph:";
  for (const auto& v : violations) msg += " " + v + ";";
  throw DataError(msg);
}

// Adjacency view derived from the edge list. `around[v]` is the node's
// closed neighborhood (v itself plus predecessors and successors,
// deduplicated, ascending) used by the mean aggregator.
struct Adjacency {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
  std::vector<std::vector<int>> around;

  explicit Adjacency(const LabeledCfg& g)
      : out(g.node_count()), in(g.node_count()), around(g.node_count()) {
    for (const auto& [s, d] : g.edges) {
      out[s].push_back(d);
      in[d].push_back(s);
    }
    for (int v = 0; v < g.node_count(); ++v) {
      std::sort(out[v].begin(), out[v].end());
      std::sort(in[v].begin(), in[v].end());
      auto& nb = around[v];
      nb.push_back(v);
      nb.insert(nb.end(), out[v].begin(), out[v].end());
      nb.insert(nb.end(), in[v].begin(), in[v].end());
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }
};

// Dense label -> index map with a reserved UNK slot at the end.
// Index assignment is first-seen order over the corpus, so the same
// corpus order always yields the same vocabulary.
class LabelVocabulary {
 public:
  static LabelVocabulary build(const std::vector<LabeledCfg>& corpus) {
    if (corpus.empty())
      throw DataError("build_vocabulary: empty corpus");
    LabelVocabulary vocab;
    for (const auto& g : corpus) {
      for (const auto& label : g.labels) {
        if (vocab.index_.emplace(label, vocab.ordered_.size()).second)
          vocab.ordered_.push_back(label);
      }
    }
    return vocab;
  }

  static LabelVocabulary from_labels(std::vector<std::string> ordered) {
    LabelVocabulary vocab;
    vocab.ordered_ = std::move(ordered);
    for (std::size_t i = 0; i < vocab.ordered_.size(); ++i)
      vocab.index_.emplace(vocab.ordered_[i], i);
    if (vocab.index_.size() != vocab.ordered_.size())
      throw DataError("vocabulary labels are not distinct");
    return vocab;
  }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? unk_index() : static_cast<int>(it->second);
  }

  int unk_index() const { return static_cast<int>(ordered_.size()); }

  // D: known labels plus UNK.
  int size() const { return static_cast<int>(ordered_.size()) + 1; }

  const std::vector<std::string>& known_labels() const { return ordered_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> ordered_;
};

inline std::vector<double> one_hot(const std::string& label,
                                   const LabelVocabulary& vocab) {
  std::vector<double> v(vocab.size(), 0.0);
  v[vocab.index_of(label)] = 1.0;
  return v;
}

inline std::vector<int> label_indices(const LabeledCfg& g,
                                      const LabelVocabulary& vocab) {
  std::vector<int> idx(g.labels.size());
  for (std::size_t i = 0; i < g.labels.size(); ++i)
    idx[i] = vocab.index_of(g.labels[i]);
  return idx;
}

}  // namespace cfgsim
