#pragma once

// Planarity oracle used by the PMFG construction. Backed by the Boyer-Myrvold
// test from Boost.Graph; the test suite cross-checks it against a brute-force
// Kuratowski-minor search on small graphs.

#include <set>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "corrnet/common.hpp"
#include "corrnet/graph.hpp"

namespace corrnet {

namespace detail {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

}  // namespace detail

// Incremental wrapper: add a candidate edge, test, drop it if it breaks
// planarity. Reentrant as long as each thread owns its instance.
class PlanarityChecker {
 public:
  explicit PlanarityChecker(int n) : g_(static_cast<std::size_t>(n)) {}

  // True if the kept edges plus (u, v) stay planar; the edge is kept on
  // success and removed again on failure.
  bool try_add_edge(int u, int v) {
    boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g_);
    if (boost::boyer_myrvold_planarity_test(g_)) return true;
    boost::remove_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g_);
    return false;
  }

 private:
  detail::BoostGraph g_;
};

// One-shot planarity test for a simple undirected graph.
inline bool is_planar(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw InputError("is_planar: negative node count");
  std::set<std::pair<int, int>> seen;
  detail::BoostGraph g(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("is_planar: self-loop on node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("is_planar: edge endpoint out of range");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw InputError("is_planar: duplicate edge (" + std::to_string(key.first) +
                       ", " + std::to_string(key.second) + ")");
    boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g);
  }
  return boost::boyer_myrvold_planarity_test(g);
}

inline bool is_planar(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(e.u, e.v);
  return is_planar(g.n, edges);
}

}  // namespace corrnet
