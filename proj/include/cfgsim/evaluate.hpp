#pragma once

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "cfgsim/ged.hpp"
#include "cfgsim/train.hpp"

// Side-by-side accuracy and runtime comparison of the classical GED
// algorithms and the learned model over a labeled pair set. Classical
// methods turn their distance into a similarity through the same
// normalization the ground truth used; the model predicts it directly.
// Wall time covers one full pass per method, normalization included.

namespace cfgsim {

enum class EvalMethod { exact, lsap, hed, funcgnn };

inline const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::exact: return "exact";
    case EvalMethod::lsap: return "lsap";
    case EvalMethod::hed: return "hed";
    case EvalMethod::funcgnn: return "funcgnn";
  }
  return "?";
}

inline EvalMethod eval_method_from_string(const std::string& s) {
  if (s == "exact") return EvalMethod::exact;
  if (s == "lsap") return EvalMethod::lsap;
  if (s == "hed") return EvalMethod::hed;
  if (s == "funcgnn") return EvalMethod::funcgnn;
  throw DataError("unknown method '" + s +
                  "' (expected exact, lsap, hed or funcgnn)");
}

struct MethodReport {
  std::string name;
  double mse = 0.0;
  double wall_seconds = 0.0;
  int parallelism = 1;
  long long pairs = 0;
  std::vector<double> predictions;      // aligned with the pair set
  std::vector<std::size_t> excluded;    // budget-exhausted pair indices
};

struct EvalReport {
  std::vector<MethodReport> rows;

  nlohmann::json to_json(bool include_timing = true) const {
    nlohmann::json rows_json = nlohmann::json::array();
    nlohmann::json predictions = nlohmann::json::object();
    nlohmann::json excluded = nlohmann::json::object();
    for (const auto& r : rows) {
      nlohmann::json row = {{"method", r.name},
                            {"mse", r.mse},
                            {"parallelism", r.parallelism},
                            {"pairs", r.pairs},
                            {"excluded_pairs",
                             static_cast<long long>(r.excluded.size())}};
      if (include_timing) row["wall_seconds"] = r.wall_seconds;
      rows_json.push_back(row);
      predictions[r.name] = r.predictions;
      excluded[r.name] = r.excluded;
    }
    return {{"rows", rows_json},
            {"predictions", predictions},
            {"excluded", excluded}};
  }

  std::string text_table() const {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-10s %-12s %-12s %-8s %-8s %s\n",
                  "method", "mse", "time_s", "workers", "pairs", "excluded");
    out += buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%-10s %-12.6g %-12.4f %-8d %-8lld %zu\n",
                    r.name.c_str(), r.mse, r.wall_seconds, r.parallelism,
                    r.pairs, r.excluded.size());
      out += buf;
    }
    return out;
  }
};

namespace detail {

template <typename Fn>
inline void run_indexed(std::size_t total, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = std::min(total, w * chunk);
        const std::size_t end = std::min(total, (w + 1) * chunk);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct EvalOptions {
  int workers = 1;              // classical methods only; the model runs serial
  long long exact_budget = 10'000'000;
  EditCostModel costs;
};

// One pass of a classical algorithm over the pair set. Budget-exhausted
// exact pairs are excluded from the MSE and reported by index.
inline MethodReport evaluate_classical(
    const std::vector<GraphPairRecord>& records, EvalMethod method,
    const EvalOptions& opts) {
  MethodReport report;
  report.name = to_string(method);
  report.parallelism = std::max(1, opts.workers);
  report.pairs = static_cast<long long>(records.size());
  report.predictions.assign(records.size(), 0.0);
  std::vector<char> failed(records.size(), 0);

  const auto t0 = std::chrono::steady_clock::now();
  detail::run_indexed(records.size(), report.parallelism, [&](std::size_t i) {
    const auto& r = records[i];
    double distance = 0.0;
    switch (method) {
      case EvalMethod::exact:
        try {
          distance =
              exact_ged(r.graph_1, r.graph_2, opts.costs, opts.exact_budget)
                  .distance;
        } catch (const BudgetExhausted&) {
          failed[i] = 1;
          return;
        }
        break;
      case EvalMethod::lsap:
        distance = lsap_ged_upper(r.graph_1, r.graph_2, opts.costs).distance;
        break;
      case EvalMethod::hed:
        distance = hed_ged_lower(r.graph_1, r.graph_2, opts.costs).distance;
        break;
      case EvalMethod::funcgnn:
        throw DataError("evaluate_classical: funcgnn is not classical");
    }
    report.predictions[i] = normalize_similarity(
        distance, r.graph_1.node_count(), r.graph_2.node_count());
  });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::vector<double> preds, targets;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (failed[i]) {
      report.excluded.push_back(i);
      continue;
    }
    preds.push_back(report.predictions[i]);
    targets.push_back(records[i].similarity);
  }
  if (preds.empty())
    throw DataError("evaluate_classical: every pair exhausted the budget");
  report.mse = mse(preds, targets);
  return report;
}

// One serial pass of the model: each distinct graph is embedded once,
// then every pair is scored from the cached encodings.
inline MethodReport evaluate_model(const std::vector<GraphPairRecord>& records,
                                   const LabelVocabulary& vocab,
                                   const ModelParams& params,
                                   const ModelConfig& cfg) {
  MethodReport report;
  report.name = to_string(EvalMethod::funcgnn);
  report.parallelism = 1;
  report.pairs = static_cast<long long>(records.size());

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> preds;
  const double value = dataset_mse(records, vocab, params, cfg, &preds);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report.mse = value;
  report.predictions = std::move(preds);
  return report;
}

inline EvalReport evaluate_methods(const std::vector<GraphPairRecord>& records,
                                   const std::vector<EvalMethod>& methods,
                                   const Checkpoint* model,
                                   const EvalOptions& opts = {}) {
  if (records.empty()) throw DataError("evaluate_methods: empty pair set");
  EvalReport report;
  for (EvalMethod m : methods) {
    if (m == EvalMethod::funcgnn) {
      if (!model)
        throw DataError("evaluate_methods: funcgnn requested without a model");
      report.rows.push_back(
          evaluate_model(records, model->vocab, model->params, model->config));
    } else {
      report.rows.push_back(evaluate_classical(records, m, opts));
    }
  }
  return report;
}

struct CaseStudy {
  double ground_truth;
  double prediction;
  double error;
};

inline CaseStudy case_study(const GraphPairRecord& pair,
                            const Checkpoint& model) {
  CaseStudy cs;
  cs.ground_truth = pair.similarity;
  cs.prediction = predict(pair.graph_1, pair.graph_2, model.vocab,
                          model.params, model.config);
  cs.error = std::abs(cs.prediction - cs.ground_truth);
  return cs;
}

}  // namespace cfgsim
