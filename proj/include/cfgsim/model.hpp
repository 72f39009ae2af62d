#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cfgsim/autodiff.hpp"
#include "cfgsim/graph.hpp"
#include "cfgsim/rng.hpp"

// Graph-pair similarity model (method id "funcgnn"): three mean-aggregate
// embedding layers over one-hot node labels, attention pooling into a
// graph embedding, a bilinear tensor comparator between the two graph
// embeddings, plus a stop-gradient histogram of pairwise node
// similarities; a fully connected stack squashes everything to a score
// in (0, 1).

namespace cfgsim {

struct ModelConfig {
  int vocab_size = 0;                      // D, bound to a vocabulary
  std::vector<int> sage_dims = {64, 64, 32};
  int ntn_slices = 16;                     // k
  int histogram_bins = 16;                 // b
  std::vector<int> fc_dims = {32, 16, 8, 1};
  std::uint64_t seed = 1;

  int embedding_width() const { return sage_dims.back(); }

  void check() const {
    if (vocab_size < 1)
      throw DataError("ModelConfig: vocab_size must be bound first");
    if (sage_dims.empty())
      throw DataError("ModelConfig: need at least one aggregation layer");
    for (int d : sage_dims)
      if (d < 1) throw DataError("ModelConfig: non-positive layer width");
    if (ntn_slices < 1) throw DataError("ModelConfig: ntn_slices must be >= 1");
    if (histogram_bins < 1)
      throw DataError("ModelConfig: histogram_bins must be >= 1");
    if (fc_dims.empty() || fc_dims.back() != 1)
      throw DataError("ModelConfig: fc stack must end in width 1");
    for (int d : fc_dims)
      if (d < 1) throw DataError("ModelConfig: non-positive fc width");
  }
};

struct ModelParams {
  std::vector<Tensor> sage;        // layer t: (in x out)
  Tensor attention;                // F x F
  std::vector<Tensor> ntn_w;       // k slices, each F x F
  Tensor ntn_v;                    // k x 2F
  Tensor ntn_b;                    // k x 1
  std::vector<Tensor> fc_w;        // (out x in)
  std::vector<Tensor> fc_b;        // (out x 1)

  static Tensor glorot(int rows, int cols, Rng& rng) {
    const double limit = std::sqrt(6.0 / (rows + cols));
    Tensor t = Tensor::zeros(rows, cols, true);
    for (auto& v : t.mutable_values()) v = rng.uniform(-limit, limit);
    return t;
  }

  static ModelParams init(const ModelConfig& cfg) {
    cfg.check();
    Rng rng(cfg.seed);
    ModelParams p;
    int in = cfg.vocab_size;
    for (int out : cfg.sage_dims) {
      p.sage.push_back(glorot(in, out, rng));
      in = out;
    }
    const int f = cfg.embedding_width();
    p.attention = glorot(f, f, rng);
    for (int s = 0; s < cfg.ntn_slices; ++s)
      p.ntn_w.push_back(glorot(f, f, rng));
    p.ntn_v = glorot(cfg.ntn_slices, 2 * f, rng);
    p.ntn_b = Tensor::zeros(cfg.ntn_slices, 1, true);
    int fc_in = cfg.ntn_slices + cfg.histogram_bins;
    for (int out : cfg.fc_dims) {
      p.fc_w.push_back(glorot(out, fc_in, rng));
      p.fc_b.push_back(Tensor::zeros(out, 1, true));
      fc_in = out;
    }
    return p;
  }

  std::vector<std::pair<std::string, Tensor>> named() const {
    std::vector<std::pair<std::string, Tensor>> out;
    for (std::size_t i = 0; i < sage.size(); ++i)
      out.emplace_back("sage." + std::to_string(i), sage[i]);
    out.emplace_back("attention", attention);
    for (std::size_t i = 0; i < ntn_w.size(); ++i)
      out.emplace_back("ntn.w." + std::to_string(i), ntn_w[i]);
    out.emplace_back("ntn.v", ntn_v);
    out.emplace_back("ntn.b", ntn_b);
    for (std::size_t i = 0; i < fc_w.size(); ++i) {
      out.emplace_back("fc." + std::to_string(i) + ".w", fc_w[i]);
      out.emplace_back("fc." + std::to_string(i) + ".b", fc_b[i]);
    }
    return out;
  }

  std::vector<Tensor> all() const {
    std::vector<Tensor> out;
    for (auto& [name, t] : named()) out.push_back(t);
    return out;
  }

  void zero_grad() {
    for (auto& t : all()) t.zero_grad();
  }

  ModelParams clone() const {
    ModelParams p = *this;
    auto copy = [](const Tensor& t) {
      return Tensor::of(t.rows(), t.cols(), t.values(), t.requires_grad());
    };
    for (auto& t : p.sage) t = copy(t);
    p.attention = copy(p.attention);
    for (auto& t : p.ntn_w) t = copy(t);
    p.ntn_v = copy(p.ntn_v);
    p.ntn_b = copy(p.ntn_b);
    for (auto& t : p.fc_w) t = copy(t);
    for (auto& t : p.fc_b) t = copy(t);
    return p;
  }
};

struct GraphEncoding {
  Tensor node_matrix;      // U: N x F
  Tensor context;          // c: 1 x F
  Tensor attention;        // a: N x 1
  Tensor graph_embedding;  // h: F x 1
};

// One aggregation layer: neighborhood mean (self plus predecessors and
// successors, full neighborhood, no sampling), then weights, then relu.
inline Tensor sage_layer(Tape& tape, const Tensor& h_prev,
                         const Adjacency& adj, const Tensor& weight) {
  return tape.relu(
      tape.matmul(tape.group_mean_rows(h_prev, adj.around), weight));
}

inline GraphEncoding encode_graph(Tape& tape, const LabeledCfg& g,
                                  const LabelVocabulary& vocab,
                                  const ModelParams& params) {
  const Adjacency adj(g);
  const std::vector<int> idx = label_indices(g, vocab);

  // Layer 1 exploits one-hot inputs: mean of one-hot rows times W is the
  // mean of the corresponding W rows.
  Tensor h = tape.relu(
      tape.group_mean_rows(tape.gather_rows(params.sage[0], idx), adj.around));
  for (std::size_t t = 1; t < params.sage.size(); ++t)
    h = sage_layer(tape, h, adj, params.sage[t]);

  GraphEncoding enc;
  enc.node_matrix = h;
  enc.context =
      tape.relu(tape.matmul(tape.mean_rows(h), params.attention));
  enc.attention = tape.relu(tape.matmul(h, tape.transpose(enc.context)));
  enc.graph_embedding = tape.matmul(tape.transpose(h), enc.attention);
  return enc;
}

// k-slice bilinear comparison: relu(h_i^T W[s] h_j + V [h_i; h_j] + b).
inline Tensor ntn_compare(Tape& tape, const Tensor& h_i, const Tensor& h_j,
                          const ModelParams& params) {
  const Tensor hi_t = tape.transpose(h_i);
  std::vector<Tensor> slices;
  slices.reserve(params.ntn_w.size());
  for (const auto& w : params.ntn_w)
    slices.push_back(tape.matmul(tape.matmul(hi_t, w), h_j));
  const Tensor bilinear = tape.concat_rows(slices);
  const Tensor pair = tape.concat_rows({h_i, h_j});
  const Tensor linear = tape.matmul(params.ntn_v, pair);
  return tape.relu(tape.add(tape.add(bilinear, linear), params.ntn_b));
}

// Histogram of sigmoid(pairwise inner products) over b equal bins of
// [0, 1], the shorter node matrix zero-padded. Binning compares the raw
// inner product against precomputed logit thresholds, which never calls
// exp and lands exact zeros in the bin containing 0.5. Normalized to
// sum to 1. Not differentiable, so computed outside any tape.
inline std::vector<double> node_similarity_histogram(
    const std::vector<double>& u_i, int n_i, const std::vector<double>& u_j,
    int n_j, int f, int bins) {
  if (bins < 1) throw DataError("node_similarity_histogram: bins must be >= 1");
  std::vector<double> thresholds(bins - 1);
  for (int t = 1; t < bins; ++t) {
    const double p = static_cast<double>(t) / bins;
    thresholds[t - 1] = std::log(p / (1.0 - p));
  }
  const int n = std::max(n_i, n_j);
  std::vector<double> hist(bins, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      if (i < n_i && j < n_j) {
        const double* a = u_i.data() + static_cast<std::size_t>(i) * f;
        const double* b = u_j.data() + static_cast<std::size_t>(j) * f;
        for (int x = 0; x < f; ++x) dot += a[x] * b[x];
      }
      int bin = 0;
      while (bin < bins - 1 && dot >= thresholds[bin]) ++bin;
      hist[bin] += 1.0;
    }
  }
  const double total = static_cast<double>(n) * n;
  for (auto& v : hist) v /= total;
  return hist;
}

inline Tensor histogram_features(Tape& tape, const GraphEncoding& enc_i,
                                 const GraphEncoding& enc_j, int bins) {
  const Tensor& ui = enc_i.node_matrix;
  const Tensor& uj = enc_j.node_matrix;
  auto hist = node_similarity_histogram(ui.values(), ui.rows(), uj.values(),
                                        uj.rows(), ui.cols(), bins);
  return tape.stop_gradient(
      Tensor::of(bins, 1, std::move(hist)));
}

// Pair scoring given two already-computed encodings.
inline Tensor compare_encodings(Tape& tape, const GraphEncoding& enc_i,
                                const GraphEncoding& enc_j,
                                const ModelParams& params,
                                const ModelConfig& cfg) {
  const Tensor ntn = ntn_compare(tape, enc_i.graph_embedding,
                                 enc_j.graph_embedding, params);
  const Tensor hist =
      histogram_features(tape, enc_i, enc_j, cfg.histogram_bins);
  Tensor z = tape.concat_rows({ntn, hist});
  for (std::size_t l = 0; l < params.fc_w.size(); ++l) {
    z = tape.add(tape.matmul(params.fc_w[l], z), params.fc_b[l]);
    if (l + 1 < params.fc_w.size()) z = tape.relu(z);
  }
  return tape.sigmoid(z);  // 1x1 in (0, 1)
}

inline Tensor forward(Tape& tape, const LabeledCfg& g1, const LabeledCfg& g2,
                      const LabelVocabulary& vocab, const ModelParams& params,
                      const ModelConfig& cfg) {
  const GraphEncoding e1 = encode_graph(tape, g1, vocab, params);
  const GraphEncoding e2 = encode_graph(tape, g2, vocab, params);
  return compare_encodings(tape, e1, e2, params, cfg);
}

// Gradient-free scalar prediction through the identical kernel sequence.
inline double predict(const LabeledCfg& g1, const LabeledCfg& g2,
                      const LabelVocabulary& vocab, const ModelParams& params,
                      const ModelConfig& cfg) {
  Tape tape(false);
  return forward(tape, g1, g2, vocab, params, cfg).item();
}

}  // namespace cfgsim
