#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/dates.hpp"

namespace corrnet {

// Undirected weighted edge, endpoints kept as u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w;
  }
};

// Simple undirected graph as an edge list.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
};

inline std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

inline std::vector<int> degrees(const Graph& g) {
  std::vector<int> deg(g.n, 0);
  for (const auto& e : g.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

inline bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  auto adj = adjacency(g);
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.n;
}

// Planar maximally filtered graph for one month: node names plus the kept
// edges with their correlation weights.
struct Pmfg : Graph {
  YearMonth label;
  std::vector<std::string> nodes;
};

}  // namespace corrnet
