#pragma once

#include <algorithm>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "cfgsim/builtins.hpp"
#include "cfgsim/cfg_build.hpp"
#include "cfgsim/dataset.hpp"
#include "cfgsim/ged.hpp"
#include "cfgsim/mutate.hpp"
#include "cfgsim/rng.hpp"

namespace cfgsim {

struct CorpusOptions {
  int mutants_per_program = 4;
  EditCostModel costs;
  int exact_node_limit = 10;
  long long budget = 10'000'000;
  std::uint64_t seed = 42;
  int workers = 1;
};

struct CorpusGraph {
  std::string name;
  LabeledCfg cfg;
};

// Parents followed by their mutants, program-major:
// p0, p0_m1..p0_mk, p1, p1_m1, ... Mutant generation is driven by a
// per-(program, mutant) substream so the expansion is order independent.
inline std::vector<CorpusGraph> expand_with_mutants(
    const std::vector<MiniProgram>& programs, int mutants_per_program,
    std::uint64_t seed) {
  if (programs.empty()) throw DataError("expand_with_mutants: no programs");
  if (mutants_per_program < 0)
    throw DataError("expand_with_mutants: negative mutant count");
  Rng base(seed);
  std::vector<CorpusGraph> graphs;
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const auto& parent = programs[p];
    const LabeledCfg parent_cfg = program_to_cfg(parent);
    graphs.push_back({parent.name, parent_cfg});
    for (int m = 1; m <= mutants_per_program; ++m) {
      Rng stream = base.fork(p).fork(m);
      MiniProgram mutant =
          mutate(parent, random_mutation(parent, stream));
      mutant.name = parent.name + "_m" + std::to_string(m);
      const LabeledCfg cfg = program_to_cfg(mutant);

      // single-operator mutants must keep the topology and move one label
      if (cfg.node_count() != parent_cfg.node_count() ||
          cfg.edges != parent_cfg.edges)
        throw DataError("mutant " + mutant.name + " changed CFG topology");
      int changed = 0;
      for (int v = 0; v < cfg.node_count(); ++v)
        if (cfg.labels[v] != parent_cfg.labels[v]) ++changed;
      if (changed != 1)
        throw DataError("mutant " + mutant.name + " changed " +
                        std::to_string(changed) + " labels");

      graphs.push_back({std::move(mutant.name), cfg});
    }
  }
  return graphs;
}

// All ordered pairs (self-pairs included) labeled with the ground-truth
// policy. Record order is pair-index order regardless of worker count.
inline std::vector<GraphPairRecord> label_all_pairs(
    const std::vector<CorpusGraph>& graphs, const CorpusOptions& opts) {
  const std::size_t m = graphs.size();
  std::vector<GraphPairRecord> records(m * m);

  auto label_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto& g1 = graphs[k / m].cfg;
      const auto& g2 = graphs[k % m].cfg;
      const GedResult r = ground_truth_ged(g1, g2, opts.costs,
                                           opts.exact_node_limit, opts.budget);
      records[k] =
          GraphPairRecord::make(g1, g2, r.distance, provenance_of(r.kind));
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    label_range(0, m * m);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t total = m * m;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          label_range(std::min(total, w * chunk),
                      std::min(total, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return records;
}

inline std::vector<GraphPairRecord> generate_corpus(
    const std::vector<MiniProgram>& programs, const CorpusOptions& opts) {
  return label_all_pairs(
      expand_with_mutants(programs, opts.mutants_per_program, opts.seed),
      opts);
}

// One function per .mini file, lexicographic file order.
inline std::vector<MiniProgram> load_programs_from_dir(
    const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw DataError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".mini")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw DataError("no .mini files in '" + dir + "'");
  std::vector<MiniProgram> programs;
  for (const auto& f : files) {
    MiniProgram p{f.stem().string(), read_file(f.string())};
    try {
      parse_program(p);  // surface syntax errors with the file name
    } catch (const ParseError& ex) {
      throw ParseError(f.string() + ": " + ex.what(), ex.line(), ex.col());
    }
    programs.push_back(std::move(p));
  }
  return programs;
}

}  // namespace cfgsim
