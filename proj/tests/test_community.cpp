#include <doctest.h>

#include <cmath>
#include <vector>

#include "corrnet/infomap.hpp"
#include "corrnet/mapequation.hpp"
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

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
Graph two_triangles() {
  return make_graph(6, {{0, 1, 1.0},
                        {0, 2, 1.0},
                        {1, 2, 1.0},
                        {3, 4, 1.0},
                        {3, 5, 1.0},
                        {4, 5, 1.0},
                        {2, 3, 1.0}});
}

Graph triangle() { return make_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

Graph random_connected(int n, double p, Rng& rng) {
  while (true) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < p)
          edges.push_back({i, j, 0.5 + rng.uniform01()});
    auto g = make_graph(n, std::move(edges));
    if (!g.edges.empty() && is_connected(g)) return g;
  }
}

}  // namespace

TEST_CASE("stationary distribution is degree-proportional") {
  auto p3 = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  auto pi = stationary_distribution(p3);
  CHECK(pi[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pi[1] == doctest::Approx(0.50).epsilon(1e-15));
  CHECK(pi[2] == doctest::Approx(0.25).epsilon(1e-15));

  SUBCASE("weighted variant uses edge weights") {
    auto g = make_graph(3, {{0, 1, 3.0}, {1, 2, 1.0}});
    auto w = stationary_distribution(g, true);
    CHECK(w[0] == doctest::Approx(3.0 / 8.0));
    CHECK(w[1] == doctest::Approx(4.0 / 8.0));
    CHECK(w[2] == doctest::Approx(1.0 / 8.0));
  }
  SUBCASE("degenerate graphs rejected") {
    CHECK_THROWS_AS(stationary_distribution(make_graph(3, {})), InputError);
    CHECK_THROWS_AS(
        stationary_distribution(make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})),
        InputError);
  }
  SUBCASE("weighted walk requires positive weights") {
    CHECK_THROWS_AS(
        stationary_distribution(make_graph(2, {{0, 1, -0.2}}), true), InputError);
  }
}

TEST_CASE("map equation reproduces hand-computed codelengths") {
  auto g = two_triangles();
  // One module: L = H of the visit rates (2,2,3,3,2,2)/14.
  CHECK(map_equation(g, {0, 0, 0, 0, 0, 0}) ==
        doctest::Approx(2.556656707462823).epsilon(1e-9));
  // Split at the bridge.
  CHECK(map_equation(g, {0, 0, 0, 1, 1, 1}) ==
        doctest::Approx(2.3207303568337903).epsilon(1e-9));
  // Singletons: every step exits a module; L = H(p) + 2 bits.
  CHECK(map_equation(g, {0, 1, 2, 3, 4, 5}) ==
        doctest::Approx(4.556656707462823).epsilon(1e-9));

  auto t = triangle();
  CHECK(map_equation(t, {0, 0, 0}) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(map_equation(t, {0, 1, 2}) ==
        doctest::Approx(3.584962500721156).epsilon(1e-9));
}

TEST_CASE("map equation equals the collapsed-form oracle") {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng.below(5));
    auto g = random_connected(n, 0.5, rng);
    bool weighted = trial % 2 == 1;

    // Random partition in canonical (restricted-growth) form.
    std::vector<int> a(n);
    int used = 0;
    for (int i = 0; i < n; ++i) {
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(used) + 1));
      a[i] = b;
      used = std::max(used, b + 1);
    }
    CHECK(map_equation(g, a, weighted) ==
          doctest::Approx(oracle::codelength(g, a, weighted)).epsilon(1e-12));
  }
}

TEST_CASE("map equation input validation") {
  auto g = two_triangles();
  CHECK_THROWS_AS(map_equation(g, {0, 0, 0}), InputError);          // size
  CHECK_THROWS_AS(map_equation(g, {0, 0, 0, 0, 0, -1}), InputError);  // negative
  CHECK_THROWS_AS(map_equation(g, {0, 0, 0, 2, 2, 2}), InputError);  // gap at 1
}

TEST_CASE("infomap finds the planted two-module split") {
  auto g = two_triangles();
  auto part = infomap(g, 20, 7);
  REQUIRE(part.n_communities == 2);
  CHECK(part.assignment == std::vector<int>{0, 0, 0, 1, 1, 1});
  CHECK(part.codelength == doctest::Approx(2.3207303568337903).epsilon(1e-9));
}

TEST_CASE("infomap reaches the exhaustive global optimum on small graphs") {
  Rng rng(1618);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + static_cast<int>(rng.below(3));  // 5..7
    auto g = random_connected(n, 0.45, rng);

    double best = 1e300;
    oracle::for_each_partition(n, [&](const std::vector<int>& a) {
      best = std::min(best, oracle::codelength(g, a));
    });

    auto part = infomap(g, 60, trial + 1);
    CHECK(part.codelength == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("infomap on a ring of cliques") {
  // Four triangles chained in a cycle: planted partition of 12 nodes.
  std::vector<Edge> edges;
  for (int b = 0; b < 4; ++b) {
    int base = 3 * b;
    edges.push_back({base, base + 1, 1.0});
    edges.push_back({base, base + 2, 1.0});
    edges.push_back({base + 1, base + 2, 1.0});
  }
  for (int b = 0; b < 4; ++b)
    edges.push_back({3 * b + 2, (3 * b + 3) % 12, 1.0});
  auto g = make_graph(12, std::move(edges));

  auto part = infomap(g, 50, 3);
  REQUIRE(part.n_communities == 4);
  for (int b = 0; b < 4; ++b) {
    CHECK(part.assignment[3 * b] == part.assignment[3 * b + 1]);
    CHECK(part.assignment[3 * b] == part.assignment[3 * b + 2]);
    if (b > 0) CHECK(part.assignment[3 * b] != part.assignment[3 * b - 3]);
  }
  // Canonical labels appear in first-use order.
  CHECK(part.assignment[0] == 0);
  CHECK(part.assignment[3] == 1);
  CHECK(part.assignment[6] == 2);
  CHECK(part.assignment[9] == 3);
}

TEST_CASE("infomap determinism and validation") {
  Rng rng(2718);
  auto g = random_connected(10, 0.4, rng);

  auto a = infomap(g, 25, 42);
  auto b = infomap(g, 25, 42);
  CHECK(a.assignment == b.assignment);
  CHECK(a.codelength == b.codelength);  // bit-exact

  auto c = infomap(g, 25, 43);
  CHECK(c.codelength == doctest::Approx(a.codelength).epsilon(1e-9));

  CHECK_THROWS_AS(infomap(g, 0, 1), InputError);
  CHECK_THROWS_AS(infomap(make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}), 5, 1),
                  InputError);
}

TEST_CASE("weighted infomap splits along light bridges") {
  // Heavy triangles, light bridge: the weighted walk concentrates inside
  // modules, so the two-module split wins under weighted flows too.
  auto g = make_graph(6, {{0, 1, 5.0},
                          {0, 2, 5.0},
                          {1, 2, 5.0},
                          {3, 4, 5.0},
                          {3, 5, 5.0},
                          {4, 5, 5.0},
                          {2, 3, 0.5}});
  auto part = infomap(g, 20, 9, true);
  CHECK(part.n_communities == 2);
  CHECK(part.assignment == std::vector<int>{0, 0, 0, 1, 1, 1});
  CHECK(part.codelength ==
        doctest::Approx(oracle::codelength(g, part.assignment, true)).epsilon(1e-12));
}
