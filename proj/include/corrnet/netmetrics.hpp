#pragma once

// Per-month graph observables: degree, non-normalized betweenness, and the
// link mutual information between monthly PMFGs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/correlation.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/parallel.hpp"

namespace corrnet {

// Non-normalized vertex betweenness on unweighted shortest paths, endpoints
// excluded, each unordered source-target pair counted once. Brandes'
// accumulation over all sources counts ordered pairs, hence the final halving.
inline std::vector<double> betweenness(const Graph& g) {
  const int n = g.n;
  auto adj = adjacency(g);
  std::vector<double> bc(n, 0.0);

  std::vector<int> dist(n), sigma(n), queue_(n), order;
  std::vector<std::vector<int>> preds(n);
  std::vector<double> delta(n);

  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1;
    int head = 0, tail = 0;
    queue_[tail++] = s;
    while (head < tail) {
      int v = queue_[head++];
      order.push_back(v);
      for (int u : adj[v]) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue_[tail++] = u;
        }
        if (dist[u] == dist[v] + 1) {
          sigma[u] += sigma[v];
          preds[u].push_back(v);
        }
      }
    }

    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int w = *it;
      for (int v : preds[w])
        delta[v] += (static_cast<double>(sigma[v]) / sigma[w]) * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }

  for (double& v : bc) v /= 2.0;
  return bc;
}

// MI of the binary edge indicators over the common node-pair universe. With
// both marginals fixed by the edge counts, this is a function of the overlap
// alone. Natural log by default; bits on request.
inline double mi_from_counts(std::size_t n_pairs, std::size_t m1,
                             std::size_t m2, std::size_t overlap,
                             bool bits = false) {
  if (n_pairs == 0) throw InputError("link MI: empty pair universe");
  if (overlap > m1 || overlap > m2 || m1 > n_pairs || m2 > n_pairs ||
      m1 + m2 > n_pairs + overlap)
    throw InputError("link MI: inconsistent edge counts");

  const double N = static_cast<double>(n_pairs);
  const double joint[2][2] = {
      {static_cast<double>(n_pairs - m1 - m2 + overlap) / N,
       static_cast<double>(m2 - overlap) / N},
      {static_cast<double>(m1 - overlap) / N, static_cast<double>(overlap) / N}};
  const double px[2] = {joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
  const double py[2] = {joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};

  double mi = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double p = joint[a][b];
      if (p > 0.0) mi += p * std::log(p / (px[a] * py[b]));
    }
  if (mi < 0.0 && mi > -1e-15) mi = 0.0;  // rounding at exact independence
  return bits ? mi / std::log(2.0) : mi;
}

namespace detail {

inline std::vector<std::pair<int, int>> sorted_edge_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  out.reserve(g.edges.size());
  for (const auto& e : g.edges) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t overlap_count(const std::vector<std::pair<int, int>>& a,
                                 const std::vector<std::pair<int, int>>& b) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++k;
      ++i;
      ++j;
    }
  }
  return k;
}

}  // namespace detail

inline double link_mutual_information(const Graph& g1, const Graph& g2,
                                      bool bits = false) {
  if (g1.n != g2.n) throw InputError("link MI: node-set mismatch");
  if (g1.n < 2) throw InputError("link MI: need at least 2 nodes");
  auto e1 = detail::sorted_edge_pairs(g1);
  auto e2 = detail::sorted_edge_pairs(g2);
  std::size_t n_pairs = static_cast<std::size_t>(g1.n) * (g1.n - 1) / 2;
  return mi_from_counts(n_pairs, e1.size(), e2.size(),
                        detail::overlap_count(e1, e2), bits);
}

// Symmetric months-by-months link-MI matrix; the diagonal is each graph's
// self-MI (the entropy of its edge density).
inline MonthMatrix mi_month_matrix(const std::vector<Pmfg>& graphs,
                                   bool bits = false) {
  const std::size_t M = graphs.size();
  if (M == 0) throw InputError("mi_month_matrix: no input graphs");
  for (const auto& g : graphs)
    if (g.n != graphs[0].n)
      throw InputError("mi_month_matrix: node-set mismatch at " + g.label.str());

  std::vector<std::vector<std::pair<int, int>>> edge_sets(M);
  for (std::size_t m = 0; m < M; ++m)
    edge_sets[m] = detail::sorted_edge_pairs(graphs[m]);

  const std::size_t n_pairs =
      static_cast<std::size_t>(graphs[0].n) * (graphs[0].n - 1) / 2;

  MonthMatrix out;
  out.kind = MonthMatrixKind::link_mi;
  out.labels.reserve(M);
  for (const auto& g : graphs) out.labels.push_back(g.label);
  out.values = Matrix(M, M);
  parallel_for(M, [&](std::size_t a) {
    for (std::size_t b = a; b < M; ++b) {
      double mi = mi_from_counts(n_pairs, edge_sets[a].size(), edge_sets[b].size(),
                                 detail::overlap_count(edge_sets[a], edge_sets[b]),
                                 bits);
      out.values(a, b) = mi;
      out.values(b, a) = mi;
    }
  });
  return out;
}

}  // namespace corrnet
