#pragma once

// Two-level map equation for undirected flow. The default walk is the
// unweighted one (the PMFG topology is what gets partitioned); a weighted
// variant scales flow by edge weight.

#include <cmath>
#include <cstddef>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/graph.hpp"

namespace corrnet {

// Node -> community assignment plus the map-equation value it achieves.
struct Partition {
  std::vector<int> assignment;  // community ids contiguous from 0
  int n_communities = 0;
  double codelength = 0.0;  // bits
};

namespace detail {

inline double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Per-node flow mass (weighted degree) and its total, 2W. For the unit-weight
// walk these are plain integers held in doubles, so module bookkeeping stays
// exact.
struct FlowWeights {
  std::vector<double> node_flow;
  double total = 0.0;  // 2W
};

inline FlowWeights flow_weights(const Graph& g, bool weighted) {
  FlowWeights fw;
  fw.node_flow.assign(g.n, 0.0);
  for (const auto& e : g.edges) {
    double w = weighted ? e.w : 1.0;
    if (weighted && !(w > 0.0))
      throw InputError("weighted walk requires strictly positive edge weights");
    fw.node_flow[e.u] += w;
    fw.node_flow[e.v] += w;
    fw.total += 2.0 * w;
  }
  return fw;
}

}  // namespace detail

// Stationary distribution of the undirected random walk: degree (or strength)
// over 2m. Exact on connected graphs, no teleportation needed.
inline std::vector<double> stationary_distribution(const Graph& g,
                                                   bool weighted = false) {
  if (g.n <= 0) throw InputError("stationary_distribution: empty graph");
  if (g.edges.empty())
    throw InputError("stationary_distribution: graph has no edges");
  if (!is_connected(g))
    throw InputError("stationary_distribution: graph is disconnected");
  auto fw = detail::flow_weights(g, weighted);
  std::vector<double> p(fw.node_flow);
  for (double& v : p) v /= fw.total;
  return p;
}

// Codelength in bits of a two-level partition:
//   L = q H(Q) + sum_m p_m H(P^m)
// with q the total exit probability, H(Q) the entropy of relative exit rates,
// p_m each community's usage (visits plus exit) and H(P^m) the entropy of its
// within-community visit-plus-exit distribution.
inline double map_equation(const Graph& g, const std::vector<int>& assignment,
                           bool weighted = false) {
  if (static_cast<int>(assignment.size()) != g.n)
    throw InputError("map_equation: assignment size mismatch");
  if (g.edges.empty()) throw InputError("map_equation: graph has no edges");

  int k = 0;
  for (int c : assignment) {
    if (c < 0) throw InputError("map_equation: negative community id");
    k = std::max(k, c + 1);
  }
  std::vector<int> members(k, 0);
  for (int c : assignment) ++members[c];
  for (int c = 0; c < k; ++c)
    if (members[c] == 0)
      throw InputError("map_equation: empty community id " + std::to_string(c));

  auto fw = detail::flow_weights(g, weighted);

  // Module visit mass and exit flow (one direction per boundary edge).
  std::vector<double> visit(k, 0.0), exit(k, 0.0);
  for (int v = 0; v < g.n; ++v) visit[assignment[v]] += fw.node_flow[v];
  for (const auto& e : g.edges) {
    if (assignment[e.u] != assignment[e.v]) {
      double w = weighted ? e.w : 1.0;
      exit[assignment[e.u]] += w;
      exit[assignment[e.v]] += w;
    }
  }

  const double total = fw.total;
  double q = 0.0;
  for (int c = 0; c < k; ++c) q += exit[c] / total;

  double L = 0.0;
  if (q > 0.0) {
    double hq = 0.0;
    for (int c = 0; c < k; ++c) {
      double rel = (exit[c] / total) / q;
      hq -= detail::plogp(rel);
    }
    L += q * hq;
  }
  for (int c = 0; c < k; ++c) {
    double usage = (exit[c] + visit[c]) / total;
    if (usage <= 0.0) continue;
    double h = -detail::plogp((exit[c] / total) / usage);
    for (int v = 0; v < g.n; ++v)
      if (assignment[v] == c) h -= detail::plogp((fw.node_flow[v] / total) / usage);
    L += usage * h;
  }
  return L;
}

}  // namespace corrnet
