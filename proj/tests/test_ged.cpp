#include "cfgsim/ged.hpp"

#include <cmath>

#include "catch_amalgamated.hpp"
#include "cfgsim/rng.hpp"
#include "ged_oracle.hpp"
#include "test_util.hpp"

using cfgsim::EditCostModel;
using cfgsim::GedKind;
using cfgsim::LabeledCfg;
using testutil::path_graph;
using testutil::random_graph;

static const LabeledCfg kSingleA{{"a"}, {}};
static const LabeledCfg kSingleB{{"b"}, {}};

TEST_CASE("oracle sanity: identity and single substitution") {
  cfgsim::Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    auto g = random_graph(rng, 5);
    CHECK(oracle::brute_force_ged(g, g) == 0.0);
  }
  CHECK(oracle::brute_force_ged(kSingleA, kSingleB) == 1.0);
}

TEST_CASE("exact_ged: identity pairs cost zero") {
  cfgsim::Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    auto g = random_graph(rng, 6);
    auto r = cfgsim::exact_ged(g, g);
    CHECK(r.distance == 0.0);
    CHECK(r.kind == GedKind::exact);
  }
}

TEST_CASE("exact_ged: single node substitution costs one") {
  CHECK(cfgsim::exact_ged(kSingleA, kSingleB).distance == 1.0);
}

TEST_CASE("exact_ged matches the brute-force oracle on random pairs") {
  cfgsim::Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    auto g1 = random_graph(rng, 6);
    auto g2 = random_graph(rng, 6);
    const double expected = oracle::brute_force_ged(g1, g2);
    const double actual = cfgsim::exact_ged(g1, g2).distance;
    INFO("pair " << i);
    CHECK(actual == Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("exact_ged under non-uniform costs still matches the oracle") {
  EditCostModel costs;
  costs.node_insert = 2.0;
  costs.node_delete = 0.5;
  costs.node_substitute = 1.5;
  costs.edge_insert = 0.25;
  costs.edge_delete = 3.0;
  cfgsim::Rng rng(4);
  for (int i = 0; i < 15; ++i) {
    auto g1 = random_graph(rng, 5);
    auto g2 = random_graph(rng, 5);
    const double expected = oracle::brute_force_ged(g1, g2, costs);
    CHECK(cfgsim::exact_ged(g1, g2, costs).distance ==
          Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("exact_ged budget exhaustion carries an admissible bound") {
  cfgsim::Rng rng(5);
  auto g1 = random_graph(rng, 6, 0.4);
  auto g2 = random_graph(rng, 6, 0.4);
  const double truth = oracle::brute_force_ged(g1, g2);
  try {
    cfgsim::exact_ged(g1, g2, {}, 2);
    FAIL("expected BudgetExhausted");
  } catch (const cfgsim::BudgetExhausted& ex) {
    CHECK(ex.best_lower_bound() >= 0.0);
    CHECK(ex.best_lower_bound() <= truth + 1e-9);
  }
}

TEST_CASE("exact_ged rejects invalid graphs") {
  LabeledCfg bad{{"a"}, {{0, 4}}};
  CHECK_THROWS_AS(cfgsim::exact_ged(bad, kSingleA), cfgsim::DataError);
}

TEST_CASE("lsap upper bound: identity is zero, never below exact") {
  cfgsim::Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    auto g1 = random_graph(rng, 6);
    auto g2 = random_graph(rng, 6);
    CHECK(cfgsim::lsap_ged_upper(g1, g1).distance == 0.0);
    const double exact = cfgsim::exact_ged(g1, g2).distance;
    const double upper = cfgsim::lsap_ged_upper(g1, g2).distance;
    CHECK(upper >= exact - 1e-9);
    // the upper bound is the cost of a real edit path
    CHECK(oracle::achievable(g1, g2, upper));
  }
}

TEST_CASE("lsap upper bound on 3-node paths with one differing label") {
  auto p1 = path_graph({"a", "b", "c"});
  auto p2 = path_graph({"a", "x", "c"});
  auto r = cfgsim::lsap_ged_upper(p1, p2);
  CHECK(r.kind == GedKind::upper_bound);
  CHECK(r.distance == 1.0);  // frozen: oracle-confirmed single relabel
  CHECK(cfgsim::exact_ged(p1, p2).distance == 1.0);
}

TEST_CASE("hed lower bound: identity zero, never above exact") {
  cfgsim::Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    auto g1 = random_graph(rng, 6);
    auto g2 = random_graph(rng, 6);
    CHECK(cfgsim::hed_ged_lower(g1, g1).distance == 0.0);
    const double exact = cfgsim::exact_ged(g1, g2).distance;
    auto r = cfgsim::hed_ged_lower(g1, g2);
    CHECK(r.kind == GedKind::lower_bound);
    CHECK(r.distance <= exact + 1e-9);
    CHECK(r.distance >= 0.0);
  }
}

TEST_CASE("hed collapses to one substitution on single-node graphs") {
  CHECK(cfgsim::hed_ged_lower(kSingleA, kSingleB).distance == 1.0);
}

TEST_CASE("all three algorithms are symmetric under uniform costs") {
  cfgsim::Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    auto g1 = random_graph(rng, 6);
    auto g2 = random_graph(rng, 6);
    CHECK(cfgsim::exact_ged(g1, g2).distance ==
          Catch::Approx(cfgsim::exact_ged(g2, g1).distance).margin(1e-9));
    CHECK(cfgsim::lsap_ged_upper(g1, g2).distance ==
          Catch::Approx(cfgsim::lsap_ged_upper(g2, g1).distance).margin(1e-9));
    CHECK(cfgsim::hed_ged_lower(g1, g2).distance ==
          Catch::Approx(cfgsim::hed_ged_lower(g2, g1).distance).margin(1e-9));
  }
}

TEST_CASE("exact_ged satisfies the triangle inequality on sampled triples") {
  cfgsim::Rng rng(9);
  for (int i = 0; i < 12; ++i) {
    auto a = random_graph(rng, 5);
    auto b = random_graph(rng, 5);
    auto c = random_graph(rng, 5);
    const double ab = cfgsim::exact_ged(a, b).distance;
    const double bc = cfgsim::exact_ged(b, c).distance;
    const double ac = cfgsim::exact_ged(a, c).distance;
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("normalize_similarity") {
  CHECK(cfgsim::normalize_similarity(0, 5, 5) == 1.0);
  CHECK(cfgsim::normalize_similarity(10, 10, 10) ==
        Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cfgsim::normalize_similarity(-1, 3, 3), cfgsim::DataError);
  CHECK_THROWS_AS(cfgsim::normalize_similarity(1, 0, 3), cfgsim::DataError);
  cfgsim::Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const double s =
        cfgsim::normalize_similarity(rng.uniform(0, 40), 1 + rng.index(20),
                                     1 + rng.index(20));
    CHECK(s > 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("ground_truth_ged dispatches on the exact node limit") {
  cfgsim::Rng rng(11);
  auto small1 = random_graph(rng, 4);
  auto small2 = random_graph(rng, 4);
  CHECK(cfgsim::ground_truth_ged(small1, small2, {}, 10).kind ==
        GedKind::exact);

  cfgsim::LabeledCfg big1, big2;
  for (int i = 0; i < 30; ++i) {
    big1.labels.push_back("n" + std::to_string(i));
    big2.labels.push_back("m" + std::to_string(i));
    if (i > 0) {
      big1.edges.push_back({i - 1, i});
      big2.edges.push_back({i - 1, i});
    }
  }
  CHECK(cfgsim::ground_truth_ged(big1, big2, {}, 10).kind ==
        GedKind::upper_bound);
}

TEST_CASE("sandwich: hed <= exact <= lsap on random pairs") {
  cfgsim::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    auto g1 = random_graph(rng, 6);
    auto g2 = random_graph(rng, 6);
    const double lo = cfgsim::hed_ged_lower(g1, g2).distance;
    const double mid = cfgsim::exact_ged(g1, g2).distance;
    const double hi = cfgsim::lsap_ged_upper(g1, g2).distance;
    CHECK(lo <= mid + 1e-9);
    CHECK(mid <= hi + 1e-9);
  }
}

TEST_CASE("assignment solver matches exhaustive search on small matrices") {
  cfgsim::Rng rng(13);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = 1 + rng.index(6);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m)
      for (auto& x : row) x = rng.uniform(0, 10);
    auto result = cfgsim::solve_assignment(m);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best = 1e300;
    do {
      double c = 0;
      for (int i = 0; i < n; ++i) c += m[i][perm[i]];
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(result.cost == Catch::Approx(best).margin(1e-9));
  }
}
