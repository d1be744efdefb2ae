#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrnet/netmetrics.hpp"
#include "corrnet/pmfg.hpp"
#include "corrnet/rng.hpp"
#include "oracles.hpp"

using namespace corrnet;

namespace {

Graph make_graph(int n, std::vector<Edge> edges) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

Pmfg random_pmfg(int n, YearMonth label, Rng& rng) {
  CorrelationMatrix C;
  C.label = label;
  C.n = static_cast<std::size_t>(n);
  C.values = Matrix(C.n, C.n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 2.0 * rng.uniform01() - 1.0;
      C.values(i, j) = v;
      C.values(j, i) = v;
    }
  return build_pmfg(C);
}

}  // namespace

TEST_CASE("betweenness on known graphs") {
  SUBCASE("path P4") {
    auto g = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    auto bc = betweenness(g);
    CHECK(bc == std::vector<double>{0.0, 2.0, 2.0, 0.0});
  }
  SUBCASE("star S4: center carries every pair") {
    auto g = make_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    auto bc = betweenness(g);
    CHECK(bc == std::vector<double>{3.0, 0.0, 0.0, 0.0});
  }
  SUBCASE("cycle C5: one geodesic pair through each node") {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5, 1.0});
    auto bc = betweenness(make_graph(5, std::move(edges)));
    for (double v : bc) CHECK(v == 1.0);
  }
  SUBCASE("square with tied geodesics splits the count") {
    std::vector<Edge> edges;
    for (int i = 0; i < 4; ++i) edges.push_back({i, (i + 1) % 4, 1.0});
    auto bc = betweenness(make_graph(4, std::move(edges)));
    // Pair (0,2) has two geodesics; each of 1 and 3 gets 1/2.
    for (double v : bc) CHECK(v == 0.5);
  }
}

TEST_CASE("betweenness matches simple-path enumeration on random graphs") {
  Rng rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng.below(5));  // 4..8
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < 0.45) edges.push_back({i, j, 1.0});
    auto g = make_graph(n, std::move(edges));

    auto fast = betweenness(g);
    auto brute = oracle::betweenness(g);
    for (int v = 0; v < n; ++v)
      CHECK(fast[v] == doctest::Approx(brute[v]).epsilon(1e-12));
  }
}

TEST_CASE("link MI closed form") {
  SUBCASE("independence point is exactly zero") {
    CHECK(mi_from_counts(10, 5, 4, 2) == 0.0);
  }
  SUBCASE("self-MI is the edge-density entropy") {
    double p = 141.0 / 1176.0;
    double want = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
    CHECK(mi_from_counts(1176, 141, 141, 141) ==
          doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("bits flag rescales by ln 2") {
    double nats = mi_from_counts(1176, 141, 141, 100);
    double bits = mi_from_counts(1176, 141, 141, 100, true);
    CHECK(bits == doctest::Approx(nats / std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("hand-computed four-node example") {
    // N=6 pairs, m1=m2=2, overlap 1.
    double want = (std::log(1.5) + 2.0 * std::log(0.75)) / 6.0 +
                  0.5 * std::log(9.0 / 8.0);
    CHECK(mi_from_counts(6, 2, 2, 1) == doctest::Approx(want).epsilon(1e-14));
  }
  SUBCASE("inconsistent counts rejected") {
    CHECK_THROWS_AS(mi_from_counts(10, 5, 4, 5), InputError);   // overlap > m2
    CHECK_THROWS_AS(mi_from_counts(10, 11, 4, 2), InputError);  // m1 > N
    CHECK_THROWS_AS(mi_from_counts(10, 6, 6, 1), InputError);   // p00 < 0
    CHECK_THROWS_AS(mi_from_counts(0, 0, 0, 0), InputError);
  }
}

TEST_CASE("link MI between graphs") {
  auto g1 = make_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}});
  auto g2 = make_graph(4, {{0, 1, 1.0}, {1, 3, 1.0}});
  double want = (std::log(1.5) + 2.0 * std::log(0.75)) / 6.0 +
                0.5 * std::log(9.0 / 8.0);
  CHECK(link_mutual_information(g1, g2) == doctest::Approx(want).epsilon(1e-14));
  CHECK(link_mutual_information(g2, g1) ==
        link_mutual_information(g1, g2));

  auto g3 = make_graph(5, {{0, 1, 1.0}});
  CHECK_THROWS_AS(link_mutual_information(g1, g3), InputError);
}

TEST_CASE("MI of random PMFG pairs is symmetric and nonnegative") {
  Rng rng(6060);
  std::vector<Pmfg> pool;
  for (int k = 0; k < 12; ++k)
    pool.push_back(random_pmfg(12, YearMonth{2000, 1 + k % 12}, rng));

  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      double ab = link_mutual_information(pool[a], pool[b]);
      double ba = link_mutual_information(pool[b], pool[a]);
      CHECK(ab == ba);
      CHECK(ab >= 0.0);
    }
}

TEST_CASE("month-by-month MI matrix") {
  Rng rng(777);
  std::vector<Pmfg> graphs;
  for (int m = 0; m < 5; ++m)
    graphs.push_back(random_pmfg(10, YearMonth{2005, m + 1}, rng));

  auto M = mi_month_matrix(graphs);
  CHECK(M.kind == MonthMatrixKind::link_mi);
  REQUIRE(M.labels.size() == 5);
  for (std::size_t a = 0; a < 5; ++a) {
    CHECK(M.values(a, a) ==
          doctest::Approx(link_mutual_information(graphs[a], graphs[a]))
              .epsilon(1e-15));
    for (std::size_t b = 0; b < 5; ++b) {
      CHECK(M.values(a, b) == M.values(b, a));
      CHECK(M.values(a, b) ==
            doctest::Approx(link_mutual_information(graphs[a], graphs[b]))
                .epsilon(1e-15));
    }
  }

  CHECK_THROWS_AS(mi_month_matrix({}), InputError);
}
