#pragma once

// Stochastic map-equation minimizer: repeated greedy node moves plus
// community merges, restarted from random node orders; the best (minimum
// codelength) partition over all restarts wins.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/mapequation.hpp"
#include "corrnet/parallel.hpp"
#include "corrnet/rng.hpp"

namespace corrnet {

namespace detail {

inline constexpr double kImprovementEps = 1e-12;  // bits
inline constexpr int kMaxSweeps = 100;

// Mutable optimizer state. Module statistics are sums of edge weights (unit
// weights for the topological walk), so for the unweighted case they stay
// exact integers and candidate evaluations are reproducible bit for bit.
class MapEqState {
 public:
  MapEqState(const Graph& g, bool weighted)
      : n_(g.n), weighted_(weighted), fw_(flow_weights(g, weighted)) {
    adj_.assign(n_, {});
    for (const auto& e : g.edges) {
      double w = weighted ? e.w : 1.0;
      adj_[e.u].push_back({e.v, w});
      adj_[e.v].push_back({e.u, w});
    }
    const_term_ = 0.0;
    for (int v = 0; v < n_; ++v) const_term_ -= plogp(fw_.node_flow[v] / fw_.total);

    module_.resize(n_);
    wsum_.assign(n_, 0.0);
    bnd_.assign(n_, 0.0);
    count_.assign(n_, 0);
    for (int v = 0; v < n_; ++v) {
      module_[v] = v;
      wsum_[v] = fw_.node_flow[v];
      bnd_[v] = fw_.node_flow[v];
      count_[v] = 1;
    }
  }

  int module_of(int v) const { return module_[v]; }
  const std::vector<int>& assignment() const { return module_; }

  double codelength() const {
    double sum_exit = 0.0, sum_plogp_exit = 0.0, sum_plogp_usage = 0.0;
    for (int c = 0; c < n_; ++c) {
      if (count_[c] == 0) continue;
      double q = bnd_[c] / fw_.total;
      sum_exit += q;
      sum_plogp_exit += plogp(q);
      sum_plogp_usage += plogp(q + wsum_[c] / fw_.total);
    }
    return plogp(sum_exit) - 2.0 * sum_plogp_exit + sum_plogp_usage + const_term_;
  }

  // Codelength if v moved from its module to `to`, without mutating state.
  double eval_move(int v, int to) const {
    int from = module_[v];
    double w_from = 0.0, w_to = 0.0;
    for (const auto& [u, w] : adj_[v]) {
      if (module_[u] == from) w_from += w;
      if (module_[u] == to) w_to += w;
    }
    double fv = fw_.node_flow[v];
    double nb_from = bnd_[from] + 2.0 * w_from - fv;
    double nb_to = bnd_[to] + fv - 2.0 * w_to;

    double sum_exit = 0.0, sum_plogp_exit = 0.0, sum_plogp_usage = 0.0;
    for (int c = 0; c < n_; ++c) {
      int cnt = count_[c];
      double b = bnd_[c], s = wsum_[c];
      if (c == from) {
        --cnt;
        b = nb_from;
        s -= fv;
      } else if (c == to) {
        ++cnt;
        b = nb_to;
        s += fv;
      }
      if (cnt == 0) continue;
      double q = b / fw_.total;
      sum_exit += q;
      sum_plogp_exit += plogp(q);
      sum_plogp_usage += plogp(q + s / fw_.total);
    }
    return plogp(sum_exit) - 2.0 * sum_plogp_exit + sum_plogp_usage + const_term_;
  }

  void apply_move(int v, int to) {
    int from = module_[v];
    if (from == to) return;
    double w_from = 0.0, w_to = 0.0;
    for (const auto& [u, w] : adj_[v]) {
      if (module_[u] == from) w_from += w;
      if (module_[u] == to) w_to += w;
    }
    double fv = fw_.node_flow[v];
    bnd_[from] += 2.0 * w_from - fv;
    bnd_[to] += fv - 2.0 * w_to;
    wsum_[from] -= fv;
    wsum_[to] += fv;
    --count_[from];
    ++count_[to];
    module_[v] = to;
  }

  // Codelength if modules a and b were merged (cross = total weight between).
  double eval_merge(int a, int b, double cross) const {
    double sum_exit = 0.0, sum_plogp_exit = 0.0, sum_plogp_usage = 0.0;
    double merged_b = bnd_[a] + bnd_[b] - 2.0 * cross;
    double merged_s = wsum_[a] + wsum_[b];
    for (int c = 0; c < n_; ++c) {
      if (count_[c] == 0 || c == b) continue;
      double bb = (c == a) ? merged_b : bnd_[c];
      double ss = (c == a) ? merged_s : wsum_[c];
      double q = bb / fw_.total;
      sum_exit += q;
      sum_plogp_exit += plogp(q);
      sum_plogp_usage += plogp(q + ss / fw_.total);
    }
    return plogp(sum_exit) - 2.0 * sum_plogp_exit + sum_plogp_usage + const_term_;
  }

  void apply_merge(int a, int b, double cross) {
    bnd_[a] = bnd_[a] + bnd_[b] - 2.0 * cross;
    wsum_[a] += wsum_[b];
    count_[a] += count_[b];
    bnd_[b] = 0.0;
    wsum_[b] = 0.0;
    count_[b] = 0;
    for (int v = 0; v < n_; ++v)
      if (module_[v] == b) module_[v] = a;
  }

  int first_empty_module() const {
    for (int c = 0; c < n_; ++c)
      if (count_[c] == 0) return c;
    return -1;
  }

  int member_count(int c) const { return count_[c]; }

  const std::vector<std::vector<std::pair<int, double>>>& adj() const {
    return adj_;
  }

 private:
  int n_;
  bool weighted_;
  FlowWeights fw_;
  double const_term_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<int> module_;
  std::vector<double> wsum_;  // sum of node flow per module
  std::vector<double> bnd_;   // boundary edge weight per module
  std::vector<int> count_;
};

// Relabel community ids by order of first appearance over node index.
inline std::vector<int> canonical_assignment(const std::vector<int>& raw,
                                             int* n_communities = nullptr) {
  std::vector<int> remap(raw.size(), -1);
  std::vector<int> out(raw.size());
  int next = 0;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    int c = raw[v];
    if (remap[c] < 0) remap[c] = next++;
    out[v] = remap[c];
  }
  if (n_communities) *n_communities = next;
  return out;
}

// One restart: greedy node-move sweeps in random order until converged, then
// greedy merges of adjacent modules, repeated while anything improves.
inline std::vector<int> optimize_once(const Graph& g, bool weighted, Rng& rng) {
  MapEqState state(g, weighted);
  double current = state.codelength();

  std::vector<int> order(g.n);
  for (int v = 0; v < g.n; ++v) order[v] = v;

  std::vector<int> cand;
  int sweeps = 0;
  bool outer_improved = true;
  while (outer_improved && sweeps < kMaxSweeps) {
    outer_improved = false;

    // Node-move sweeps.
    bool moved = true;
    while (moved && sweeps < kMaxSweeps) {
      moved = false;
      ++sweeps;
      rng.shuffle(order);
      for (int v : order) {
        int from = state.module_of(v);
        cand.clear();
        for (const auto& [u, w] : state.adj()[v]) {
          (void)w;
          int c = state.module_of(u);
          if (c != from) cand.push_back(c);
        }
        if (state.member_count(from) > 1) {
          int empty = state.first_empty_module();
          if (empty >= 0) cand.push_back(empty);
        }
        if (cand.empty()) continue;
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        double best = current;
        int best_to = from;
        for (int to : cand) {
          double L = state.eval_move(v, to);
          if (L < best - kImprovementEps) {
            best = L;
            best_to = to;
          }
        }
        if (best_to != from) {
          state.apply_move(v, best_to);
          current = best;
          moved = true;
          outer_improved = true;
        }
      }
    }

    // Merge passes over adjacent module pairs.
    bool merged = true;
    while (merged) {
      merged = false;
      std::vector<std::pair<std::pair<int, int>, double>> cross;
      for (const auto& e : g.edges) {
        int a = state.module_of(e.u), b = state.module_of(e.v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        double w = weighted ? e.w : 1.0;
        auto it = std::find_if(cross.begin(), cross.end(), [&](const auto& kv) {
          return kv.first.first == a && kv.first.second == b;
        });
        if (it == cross.end())
          cross.push_back({{a, b}, w});
        else
          it->second += w;
      }
      std::sort(cross.begin(), cross.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });

      double best = current;
      int best_a = -1, best_b = -1;
      double best_cross = 0.0;
      for (const auto& [ab, w] : cross) {
        double L = state.eval_merge(ab.first, ab.second, w);
        if (L < best - kImprovementEps) {
          best = L;
          best_a = ab.first;
          best_b = ab.second;
          best_cross = w;
        }
      }
      if (best_a >= 0) {
        state.apply_merge(best_a, best_b, best_cross);
        current = best;
        merged = true;
        outer_improved = true;
      }
    }
  }
  return state.assignment();
}

}  // namespace detail

// Best-of-`restarts` map-equation partition. Restarts use derived seeds
// (seed + index) and run in parallel; the reduction is deterministic, taking
// the minimal codelength and breaking exact ties by lexicographically
// smallest canonical assignment.
inline Partition infomap(const Graph& g, int restarts = 100,
                         std::uint64_t seed = 0, bool weighted = false) {
  if (restarts < 1) throw InputError("infomap: need at least one restart");
  if (!is_connected(g)) throw InputError("infomap: graph is disconnected");

  std::vector<Partition> results(restarts);
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    auto raw = detail::optimize_once(g, weighted, rng);
    Partition p;
    p.assignment = detail::canonical_assignment(raw, &p.n_communities);
    p.codelength = map_equation(g, p.assignment, weighted);
    results[r] = std::move(p);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].codelength < results[best].codelength ||
        (results[r].codelength == results[best].codelength &&
         results[r].assignment < results[best].assignment))
      best = r;
  }
  return results[best];
}

}  // namespace corrnet
