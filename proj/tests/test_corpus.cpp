#include "cfgsim/corpus.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "catch_amalgamated.hpp"

using cfgsim::CorpusOptions;
using cfgsim::MiniProgram;

static const MiniProgram kTiny1{"inc",
                                "int inc(int x) { x = x + 1; return x; }"};
static const MiniProgram kTiny2{"dbl",
                                "int dbl(int x) { x = x * 2; return x; }"};

TEST_CASE("two programs without mutants give four records") {
  CorpusOptions opts;
  opts.mutants_per_program = 0;
  auto records = cfgsim::generate_corpus({kTiny1, kTiny2}, opts);
  REQUIRE(records.size() == 4);
  int self_pairs = 0;
  for (const auto& r : records) {
    if (r.graph_1 == r.graph_2) {
      ++self_pairs;
      CHECK(r.ged == 0.0);
      CHECK(r.similarity == 1.0);
    }
  }
  CHECK(self_pairs == 2);
}

TEST_CASE("corpus size is the square of the graph count") {
  CorpusOptions opts;
  opts.mutants_per_program = 2;
  auto programs = std::vector<MiniProgram>(cfgsim::builtin_programs().begin(),
                                           cfgsim::builtin_programs().begin() + 3);
  auto graphs = cfgsim::expand_with_mutants(programs, 2, opts.seed);
  CHECK(graphs.size() == 9);
  CHECK(graphs[0].name == "bubbleSort");
  CHECK(graphs[1].name == "bubbleSort_m1");
  auto records = cfgsim::label_all_pairs(graphs, opts);
  CHECK(records.size() == 81);
}

TEST_CASE("regeneration with the same seed is byte-identical") {
  CorpusOptions opts;
  opts.mutants_per_program = 2;
  std::vector<MiniProgram> programs = {kTiny1, kTiny2};
  auto a = cfgsim::generate_corpus(programs, opts);
  auto b = cfgsim::generate_corpus(programs, opts);
  CHECK(cfgsim::serialize_pair_dataset(a) == cfgsim::serialize_pair_dataset(b));
}

TEST_CASE("worker count does not change the records") {
  CorpusOptions serial;
  serial.mutants_per_program = 1;
  CorpusOptions parallel = serial;
  parallel.workers = 3;
  std::vector<MiniProgram> programs = {kTiny1, kTiny2};
  auto a = cfgsim::generate_corpus(programs, serial);
  auto b = cfgsim::generate_corpus(programs, parallel);
  CHECK(cfgsim::serialize_pair_dataset(a) == cfgsim::serialize_pair_dataset(b));
}

TEST_CASE("parent-to-own-mutant distance stays small") {
  CorpusOptions opts;
  opts.mutants_per_program = 3;
  auto programs = std::vector<MiniProgram>(cfgsim::builtin_programs().begin() + 16,
                                           cfgsim::builtin_programs().begin() + 20);
  auto graphs = cfgsim::expand_with_mutants(programs, 3, opts.seed);
  auto records = cfgsim::label_all_pairs(graphs, opts);
  const std::size_t m = graphs.size();
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const std::size_t parent = p * 4;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto& r = records[parent * m + parent + k];
      CHECK(r.ged <= 2.0);
      CHECK(r.ged >= 1.0);
    }
  }
}

TEST_CASE("a program without mutable operators fails loudly by name") {
  CorpusOptions opts;
  opts.mutants_per_program = 1;
  MiniProgram hopeless{"hopeless", "int hopeless(int x) { return x; }"};
  CHECK_THROWS_WITH(cfgsim::generate_corpus({hopeless}, opts),
                    Catch::Matchers::ContainsSubstring("hopeless"));
}

TEST_CASE("programs load from a directory in filename order") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cfgsim_corpus_test";
  fs::create_directories(dir);
  cfgsim::write_file((dir / "b_second.mini").string(),
                     "int second(int x) { x = x - 1; return x; }");
  cfgsim::write_file((dir / "a_first.mini").string(),
                     "int first(int x) { x = x + 1; return x; }");
  auto programs = cfgsim::load_programs_from_dir(dir.string());
  REQUIRE(programs.size() == 2);
  CHECK(programs[0].name == "a_first");
  CHECK(programs[1].name == "b_second");

  cfgsim::write_file((dir / "c_bad.mini").string(), "int broken( { }");
  CHECK_THROWS_WITH(cfgsim::load_programs_from_dir(dir.string()),
                    Catch::Matchers::ContainsSubstring("c_bad"));
  fs::remove_all(dir);
}

TEST_CASE("empty directory input is rejected") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cfgsim_empty_test";
  fs::create_directories(dir);
  CHECK_THROWS_AS(cfgsim::load_programs_from_dir(dir.string()),
                  cfgsim::DataError);
  fs::remove_all(dir);
  CHECK_THROWS_AS(cfgsim::load_programs_from_dir("/nonexistent/dir"),
                  cfgsim::DataError);
}

// Manual probe for ground-truth labeling cost at acceptance scale.
// Run with: cfgsim_tests "[.][probe]"
TEST_CASE("corpus timing probe", "[.][probe]") {
  const auto& all = cfgsim::builtin_programs();
  std::vector<MiniProgram> programs(all.begin(), all.begin() + 20);
  CorpusOptions opts;
  const auto t0 = std::chrono::steady_clock::now();
  auto records = cfgsim::generate_corpus(programs, opts);
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  int exact = 0;
  for (const auto& r : records)
    if (r.provenance == cfgsim::Provenance::exact) ++exact;
  std::cout << "graphs=100 records=" << records.size() << " exact=" << exact
            << " lsap=" << (records.size() - exact) << " time=" << dt.count()
            << "s\n";
  auto graphs = cfgsim::expand_with_mutants(programs, 4, opts.seed);
  int nmin = 1 << 20, nmax = 0, total = 0;
  for (const auto& g : graphs) {
    nmin = std::min(nmin, g.cfg.node_count());
    nmax = std::max(nmax, g.cfg.node_count());
    total += g.cfg.node_count();
  }
  std::cout << "node counts: min=" << nmin
            << " mean=" << static_cast<double>(total) / graphs.size()
            << " max=" << nmax << "\n";
  CHECK(records.size() == 10000);
}
