#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfgsim/checkpoint.hpp"
#include "cfgsim/dataset.hpp"
#include "cfgsim/model.hpp"
#include "cfgsim/rng.hpp"

namespace cfgsim {

struct TrainConfig {
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 1e-3;
  enum class Optimizer { sgd, adam };
  Optimizer optimizer = Optimizer::adam;
  double split_ratio = 0.8;
  std::uint64_t seed = 42;
  std::string checkpoint_path;  // best-test checkpoint persisted when set
  int patience = 20;            // epochs of test stagnation before stopping

  void check() const {
    if (epochs < 1) throw DataError("TrainConfig: epochs must be >= 1");
    if (batch_size < 1) throw DataError("TrainConfig: batch_size must be >= 1");
    if (!(learning_rate > 0))
      throw DataError("TrainConfig: learning_rate must be > 0");
    if (!(split_ratio > 0.0 && split_ratio < 1.0))
      throw DataError("TrainConfig: split_ratio must be in (0, 1)");
  }
};

// Deterministic shuffled split: floor(ratio*n) train, remainder test.
inline std::pair<std::vector<GraphPairRecord>, std::vector<GraphPairRecord>>
split_dataset(const std::vector<GraphPairRecord>& records, double ratio,
              std::uint64_t seed) {
  if (records.empty()) throw DataError("split_dataset: empty dataset");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw DataError("split_dataset: ratio must be in (0, 1)");
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  shuffle(order, rng);
  const std::size_t train_n =
      static_cast<std::size_t>(ratio * static_cast<double>(records.size()));
  std::pair<std::vector<GraphPairRecord>, std::vector<GraphPairRecord>> out;
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < train_n ? out.first : out.second).push_back(records[order[i]]);
  return out;
}

inline double mse(const std::vector<double>& preds,
                  const std::vector<double>& targets) {
  if (preds.empty()) throw DataError("mse: empty input");
  if (preds.size() != targets.size())
    throw DataError("mse: length mismatch (" + std::to_string(preds.size()) +
                    " vs " + std::to_string(targets.size()) + ")");
  double acc = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double d = preds[i] - targets[i];
    acc += d * d;
  }
  return acc / static_cast<double>(preds.size());
}

class SgdOptimizer {
 public:
  void step(const std::vector<Tensor>& params, double lr) {
    for (const auto& p : params) {
      Tensor::ensure_grad(*p.raw());
      auto& v = p.raw()->value;
      const auto& g = p.raw()->grad;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= lr * g[i];
    }
  }
};

class AdamOptimizer {
 public:
  explicit AdamOptimizer(double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(const std::vector<Tensor>& params, double lr) {
    if (m_.empty()) {
      for (const auto& p : params) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
      }
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (std::size_t k = 0; k < params.size(); ++k) {
      Tensor::ensure_grad(*params[k].raw());
      auto& value = params[k].raw()->value;
      const auto& grad = params[k].raw()->grad;
      for (std::size_t i = 0; i < value.size(); ++i) {
        m_[k][i] = beta1_ * m_[k][i] + (1.0 - beta1_) * grad[i];
        v_[k][i] = beta2_ * v_[k][i] + (1.0 - beta2_) * grad[i] * grad[i];
        value[i] -=
            lr * (m_[k][i] / bc1) / (std::sqrt(v_[k][i] / bc2) + eps_);
      }
    }
  }

 private:
  double beta1_, beta2_, eps_;
  long long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

struct LossCurvePoint {
  int epoch;
  double train_mse;
  double test_mse;
};

struct TrainResult {
  ModelConfig config;  // vocab_size bound
  LabelVocabulary vocab;
  ModelParams params;  // best test-MSE parameters
  std::vector<LossCurvePoint> curve;
  int best_epoch = 0;
  double best_test_mse = 0.0;
};

inline std::string loss_curve_csv(const std::vector<LossCurvePoint>& curve) {
  std::string out = "epoch,train_mse,test_mse\n";
  char buf[80];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", p.epoch, p.train_mse,
                  p.test_mse);
    out += buf;
  }
  return out;
}

// Whole-set MSE with per-pass caching of graph encodings; params are
// frozen during the call so each distinct graph is embedded once.
inline double dataset_mse(const std::vector<GraphPairRecord>& records,
                          const LabelVocabulary& vocab,
                          const ModelParams& params, const ModelConfig& cfg,
                          std::vector<double>* out_preds = nullptr);

namespace detail {

inline std::string graph_cache_key(const LabeledCfg& g) {
  std::string key;
  key.reserve(g.labels.size() * 12 + g.edges.size() * 8);
  for (const auto& l : g.labels) {
    key += l;
    key += '\x1f';
  }
  key += '|';
  for (const auto& [s, d] : g.edges) {
    key += std::to_string(s);
    key += ',';
    key += std::to_string(d);
    key += ';';
  }
  return key;
}

}  // namespace detail

inline double dataset_mse(const std::vector<GraphPairRecord>& records,
                          const LabelVocabulary& vocab,
                          const ModelParams& params, const ModelConfig& cfg,
                          std::vector<double>* out_preds) {
  Tape tape(false);
  std::unordered_map<std::string, GraphEncoding> cache;
  auto encoding_of = [&](const LabeledCfg& g) -> const GraphEncoding& {
    const std::string key = detail::graph_cache_key(g);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, encode_graph(tape, g, vocab, params)).first;
    return it->second;
  };
  std::vector<double> preds, targets;
  preds.reserve(records.size());
  targets.reserve(records.size());
  for (const auto& r : records) {
    const auto& e1 = encoding_of(r.graph_1);
    const auto& e2 = encoding_of(r.graph_2);
    preds.push_back(compare_encodings(tape, e1, e2, params, cfg).item());
    targets.push_back(r.similarity);
  }
  const double result = mse(preds, targets);
  if (out_preds) *out_preds = std::move(preds);
  return result;
}

// Mini-batch gradient descent on the squared error of each pair's
// predicted similarity. The vocabulary comes from the training graphs
// only; test targets are never read during optimization. Returns the
// parameters of the best test epoch.
inline TrainResult train(const std::vector<GraphPairRecord>& train_set,
                         const std::vector<GraphPairRecord>& test_set,
                         ModelConfig model_config,
                         const TrainConfig& train_config) {
  train_config.check();
  if (train_set.empty()) throw DataError("train: empty training set");

  std::vector<LabeledCfg> train_graphs;
  for (const auto& r : train_set) {
    train_graphs.push_back(r.graph_1);
    train_graphs.push_back(r.graph_2);
  }
  TrainResult result;
  result.vocab = LabelVocabulary::build(train_graphs);
  model_config.vocab_size = result.vocab.size();
  model_config.check();
  result.config = model_config;

  ModelParams params = ModelParams::init(model_config);
  SgdOptimizer sgd;
  AdamOptimizer adam;
  Rng rng(train_config.seed);

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double best_test = std::numeric_limits<double>::infinity();
  int best_epoch = -1;

  for (int epoch = 1; epoch <= train_config.epochs; ++epoch) {
    Rng epoch_rng = rng.fork(epoch);
    shuffle(order, epoch_rng);

    double epoch_sq_err = 0.0;
    for (std::size_t begin = 0; begin < order.size();
         begin += train_config.batch_size) {
      const std::size_t end =
          std::min(order.size(),
                   begin + static_cast<std::size_t>(train_config.batch_size));
      Tape tape(true);
      std::vector<Tensor> losses;
      losses.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        const auto& r = train_set[order[i]];
        try {
          const Tensor yhat = forward(tape, r.graph_1, r.graph_2,
                                      result.vocab, params, model_config);
          const Tensor diff =
              tape.sub(yhat, Tensor::scalar(r.similarity));
          losses.push_back(tape.mul_elem(diff, diff));
        } catch (const NumericError& ex) {
          throw NumericError("train: non-finite value at epoch " +
                             std::to_string(epoch) + ", batch " +
                             std::to_string(begin / train_config.batch_size) +
                             ", pair " + std::to_string(order[i]) + ": " +
                             ex.what());
        }
      }
      const Tensor batch_loss = tape.mean_rows(tape.concat_rows(losses));
      if (!std::isfinite(batch_loss.item()))
        throw NumericError("train: non-finite loss at epoch " +
                           std::to_string(epoch) + ", batch " +
                           std::to_string(begin / train_config.batch_size));
      epoch_sq_err += batch_loss.item() * static_cast<double>(end - begin);
      params.zero_grad();
      tape.backward(batch_loss);
      if (train_config.optimizer == TrainConfig::Optimizer::adam)
        adam.step(params.all(), train_config.learning_rate);
      else
        sgd.step(params.all(), train_config.learning_rate);
    }

    LossCurvePoint point;
    point.epoch = epoch;
    point.train_mse = epoch_sq_err / static_cast<double>(train_set.size());
    point.test_mse = test_set.empty()
                         ? point.train_mse
                         : dataset_mse(test_set, result.vocab, params,
                                       model_config);
    result.curve.push_back(point);

    if (point.test_mse < best_test) {
      best_test = point.test_mse;
      best_epoch = epoch;
      result.params = params.clone();
      if (!train_config.checkpoint_path.empty())
        save_checkpoint({model_config, result.vocab, result.params},
                        train_config.checkpoint_path);
    }
    if (epoch - best_epoch >= train_config.patience) break;
  }

  result.best_epoch = best_epoch;
  result.best_test_mse = best_test;
  return result;
}

}  // namespace cfgsim
