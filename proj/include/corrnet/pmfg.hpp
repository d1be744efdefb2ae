#pragma once

// PMFG construction by greedy edge insertion under a planarity constraint,
// plus the maximum spanning tree used as a containment oracle.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/correlation.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/planarity.hpp"

namespace corrnet {

namespace detail {

// All node pairs in descending weight order; ties broken by lexicographic
// (i, j) so identical inputs always yield identical graphs.
inline std::vector<Edge> sorted_candidates(const Matrix& values, int n) {
  std::vector<Edge> cand;
  cand.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cand.push_back(Edge{i, j, values(i, j)});
  std::sort(cand.begin(), cand.end(), [](const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return cand;
}

}  // namespace detail

// Greedy PMFG: walk the candidate pairs in descending correlation, keep an
// edge iff the kept set stays planar, stop at the 3(n-2) planar-graph bound.
// Correlations are used directly as weights; any monotone transform would
// select the same edges.
inline Pmfg build_pmfg(const CorrelationMatrix& C) {
  const int n = static_cast<int>(C.n);
  if (n < 3) throw InputError("build_pmfg: need at least 3 nodes");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!std::isfinite(C.values(i, j)))
        throw EstimationError("pmfg", C.label.str(),
                              "non-finite correlation entry");

  const std::size_t target = static_cast<std::size_t>(3) * (n - 2);

  Pmfg out;
  out.label = C.label;
  out.n = n;
  out.edges.reserve(target);

  PlanarityChecker checker(n);
  for (const Edge& e : detail::sorted_candidates(C.values, n)) {
    if (checker.try_add_edge(e.u, e.v)) {
      out.edges.push_back(e);
      if (out.edges.size() == target) break;
    }
  }
  return out;
}

// Maximum spanning tree, Kruskal with the same descending-weight tie-break
// as build_pmfg.
inline std::vector<Edge> max_spanning_tree(const CorrelationMatrix& C) {
  const int n = static_cast<int>(C.n);
  if (n < 2) throw InputError("max_spanning_tree: need at least 2 nodes");

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<Edge> tree;
  tree.reserve(static_cast<std::size_t>(n) - 1);
  for (const Edge& e : detail::sorted_candidates(C.values, n)) {
    int ru = find(e.u), rv = find(e.v);
    if (ru == rv) continue;
    parent[ru] = rv;
    tree.push_back(e);
    if (tree.size() == static_cast<std::size_t>(n) - 1) break;
  }
  return tree;
}

}  // namespace corrnet
