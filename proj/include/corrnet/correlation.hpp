#pragma once

// Monthly Pearson correlation matrices, their average off-diagonal level, and
// the month-by-month Spearman similarity of correlation structures.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/dates.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/parallel.hpp"

namespace corrnet {

// Symmetric, unit-diagonal correlation matrix for one evaluation window.
struct CorrelationMatrix {
  YearMonth label;
  std::size_t n = 0;
  Matrix values;  // n x n
  std::size_t n_obs = 0;
};

enum class MonthMatrixKind { spearman, link_mi };

// Dense months-by-months similarity matrix (Spearman or link MI).
struct MonthMatrix {
  std::vector<YearMonth> labels;
  Matrix values;
  MonthMatrixKind kind;
};

// Sample Pearson coefficients over the window rows. The normalized form makes
// any n-vs-(n-1) moment convention cancel; the diagonal is set to exactly 1
// and off-diagonals are clamped to [-1, 1] against rounding.
inline CorrelationMatrix pearson_matrix(const WindowSlice& slice,
                                        const ReturnPanel& panel) {
  const std::size_t n = panel.n_assets();
  const std::size_t t0 = slice.row_begin, t1 = slice.row_end;
  const std::size_t T = t1 - t0;
  if (T < 2)
    throw EstimationError("pearson", slice.label.str(),
                          "window has fewer than 2 observations");

  // Demean columns once, then correlate by dot products.
  Matrix centered(T, n);
  for (std::size_t c = 0; c < n; ++c) {
    double mean = 0.0;
    bool constant = true;
    for (std::size_t t = 0; t < T; ++t) {
      double v = panel.returns(t0 + t, c);
      if (!std::isfinite(v))
        throw EstimationError("pearson", slice.label.str(),
                              "non-finite return for " + panel.assets[c] +
                                  " (validate or impute first)");
      constant = constant && v == panel.returns(t0, c);
      mean += v;
    }
    if (constant)
      throw EstimationError("pearson", slice.label.str(),
                            "zero variance for asset " + panel.assets[c]);
    mean /= static_cast<double>(T);
    for (std::size_t t = 0; t < T; ++t)
      centered(t, c) = panel.returns(t0 + t, c) - mean;
  }

  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) {
    double ss = 0.0;
    for (std::size_t t = 0; t < T; ++t) ss += centered(t, c) * centered(t, c);
    if (ss <= 0.0)
      throw EstimationError("pearson", slice.label.str(),
                            "zero variance for asset " + panel.assets[c]);
    norms[c] = std::sqrt(ss);
  }

  CorrelationMatrix out;
  out.label = slice.label;
  out.n = n;
  out.n_obs = T;
  out.values = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t t = 0; t < T; ++t) dot += centered(t, i) * centered(t, j);
      double c = dot / (norms[i] * norms[j]);
      c = std::clamp(c, -1.0, 1.0);
      out.values(i, j) = c;
      out.values(j, i) = c;
    }
  }
  return out;
}

// Mean of the n(n-1)/2 upper-triangle entries.
inline double average_offdiag(const CorrelationMatrix& C) {
  const std::size_t n = C.n;
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += C.values(i, j);
  return sum / (static_cast<double>(n) * (n - 1) / 2.0);
}

// Canonical flattening: row-major upper triangle, (0,1), (0,2), ..., (n-2,n-1).
// This ordering is part of the public contract so rank comparisons are
// reproducible across implementations.
inline std::vector<double> offdiag_vector(const CorrelationMatrix& C) {
  std::vector<double> v;
  v.reserve(C.n * (C.n - 1) / 2);
  for (std::size_t i = 0; i < C.n; ++i)
    for (std::size_t j = i + 1; j < C.n; ++j) v.push_back(C.values(i, j));
  return v;
}

// Average-tie ranks, 1-based.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace detail {

// Centered, unit-norm vector; used so Pearson reduces to a dot product.
inline std::vector<double> standardized(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> z(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = x[i] - mean;
    ss += z[i] * z[i];
  }
  if (ss <= 0.0) throw InputError("constant sequence has no defined ranks");
  double inv = 1.0 / std::sqrt(ss);
  for (double& v : z) v *= inv;
  return z;
}

}  // namespace detail

// Pearson coefficient of the average-tie ranks of x and y.
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("spearman: length mismatch");
  if (x.size() < 2) throw InputError("spearman: need at least 2 values");
  auto zx = detail::standardized(average_ranks(x));
  auto zy = detail::standardized(average_ranks(y));
  double dot = 0.0;
  for (std::size_t i = 0; i < zx.size(); ++i) dot += zx[i] * zy[i];
  return std::clamp(dot, -1.0, 1.0);
}

// All-pairs Spearman similarity of the flattened correlation structures.
// Upper triangle computed once (in parallel over rows) and mirrored; the
// diagonal is 1 by definition.
inline MonthMatrix spearman_month_matrix(
    const std::vector<CorrelationMatrix>& matrices) {
  const std::size_t M = matrices.size();
  if (M == 0) throw InputError("spearman_month_matrix: no input matrices");
  for (const auto& C : matrices)
    if (C.n != matrices[0].n)
      throw InputError("spearman_month_matrix: asset count mismatch at " +
                       C.label.str());

  std::vector<std::vector<double>> z(M);
  parallel_for(M, [&](std::size_t m) {
    z[m] = detail::standardized(average_ranks(offdiag_vector(matrices[m])));
  });

  MonthMatrix out;
  out.kind = MonthMatrixKind::spearman;
  out.labels.reserve(M);
  for (const auto& C : matrices) out.labels.push_back(C.label);
  out.values = Matrix(M, M);
  parallel_for(M, [&](std::size_t a) {
    out.values(a, a) = 1.0;
    for (std::size_t b = a + 1; b < M; ++b) {
      double dot = 0.0;
      const auto& za = z[a];
      const auto& zb = z[b];
      for (std::size_t i = 0; i < za.size(); ++i) dot += za[i] * zb[i];
      dot = std::clamp(dot, -1.0, 1.0);
      out.values(a, b) = dot;
      out.values(b, a) = dot;
    }
  });
  return out;
}

}  // namespace corrnet
