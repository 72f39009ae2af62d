#include "cfgsim/mutate.hpp"

#include "catch_amalgamated.hpp"
#include "cfgsim/builtins.hpp"
#include "cfgsim/cfg_build.hpp"
#include "cfgsim/corpus.hpp"
#include "cfgsim/ged.hpp"

using cfgsim::MiniProgram;
using cfgsim::MutationClass;
using cfgsim::MutationOp;

TEST_CASE("arith mutation flips one operator token") {
  MiniProgram p{"acc", "int acc(int s, int x) { s = s + x; return s; }"};
  auto m = cfgsim::mutate(p, {MutationClass::arith, 0, 1});
  CHECK(m.source == "int acc(int s, int x) { s = s - x; return s; }");
}

TEST_CASE("mutant CFG is one substitution away from its parent") {
  MiniProgram p{"acc", "int acc(int s, int x) { s = s + x; return s; }"};
  auto m = cfgsim::mutate(p, {MutationClass::arith, 0, 1});
  auto g1 = cfgsim::program_to_cfg(p);
  auto g2 = cfgsim::program_to_cfg(m);
  CHECK(cfgsim::exact_ged(g1, g2).distance == 1.0);
}

TEST_CASE("mutating a statement without the requested class lists sites") {
  MiniProgram p{"two",
                "int two(int a, int b) { int x = a + b; int y = 7; return y; }"};
  try {
    cfgsim::mutate(p, {MutationClass::bitwise, 0, 1});
    FAIL("expected DataError");
  } catch (const cfgsim::DataError& ex) {
    const std::string msg = ex.what();
    CHECK(msg.find("mutable sites: 0") != std::string::npos);
  }
}

TEST_CASE("a program with no operators has no mutations") {
  MiniProgram p{"id", "int id(int x) { return x; }"};
  CHECK(cfgsim::mutable_sites(p).empty());
  CHECK_THROWS_AS(cfgsim::mutate(p, {MutationClass::arith, 0, 1}),
                  cfgsim::DataError);
  cfgsim::Rng rng(1);
  CHECK_THROWS_WITH(cfgsim::random_mutation(p, rng),
                    Catch::Matchers::ContainsSubstring("id"));
}

TEST_CASE("relational mutation inside a loop condition") {
  MiniProgram p{"loop",
                "int loop(int i, int n) { while (i < n) { i = i + 1; } return i; }"};
  auto m = cfgsim::mutate(p, {MutationClass::relational, 0, 3});
  CHECK(m.source.find("i <= n") != std::string::npos);
  auto g1 = cfgsim::program_to_cfg(p);
  auto g2 = cfgsim::program_to_cfg(m);
  CHECK(g1.edges == g2.edges);
  CHECK(cfgsim::exact_ged(g1, g2).distance == 1.0);
}

TEST_CASE("bitwise mutation keeps the tree shape despite the swap") {
  MiniProgram p{"bits",
                "int bits(int a, int b, int c) { int x = a | b & c; return x; }"};
  auto m = cfgsim::mutate(p, {MutationClass::bitwise, 0, 5});
  auto g1 = cfgsim::program_to_cfg(p);
  auto g2 = cfgsim::program_to_cfg(m);
  REQUIRE(g1.node_count() == g2.node_count());
  CHECK(g1.edges == g2.edges);
  int changed = 0;
  for (int v = 0; v < g1.node_count(); ++v)
    if (g1.labels[v] != g2.labels[v]) ++changed;
  CHECK(changed == 1);
}

TEST_CASE("equality mutation") {
  MiniProgram p{"eq", "int eq(int a) { if (a == 0) { a = 1; } return a; }"};
  auto m = cfgsim::mutate(p, {MutationClass::relational, 0, 9});
  CHECK(m.source.find("a != 0") != std::string::npos);
}

TEST_CASE("random_mutation is deterministic per seed") {
  const auto& p = cfgsim::builtin_programs()[0];
  cfgsim::Rng a(77), b(77);
  auto opa = cfgsim::random_mutation(p, a);
  auto opb = cfgsim::random_mutation(p, b);
  CHECK(opa.site == opb.site);
  CHECK(opa.kind == opb.kind);
  CHECK(opa.seed == opb.seed);
  CHECK(cfgsim::mutate(p, opa).source == cfgsim::mutate(p, opb).source);
}

TEST_CASE("every builtin yields valid mutants across many seeds") {
  for (const auto& p : cfgsim::builtin_programs()) {
    cfgsim::Rng rng(5);
    for (int trial = 0; trial < 4; ++trial) {
      auto op = cfgsim::random_mutation(p, rng);
      auto m = cfgsim::mutate(p, op);
      auto g1 = cfgsim::program_to_cfg(p);
      auto g2 = cfgsim::program_to_cfg(m);
      REQUIRE(g1.node_count() == g2.node_count());
      REQUIRE(g1.edges == g2.edges);
      int changed = 0;
      for (int v = 0; v < g1.node_count(); ++v)
        if (g1.labels[v] != g2.labels[v]) ++changed;
      CHECK(changed == 1);
    }
  }
}
