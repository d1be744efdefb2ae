#pragma once

// Symmetric eigendecomposition (cyclic Jacobi) and the monthly eigenvalue /
// eigenvector time series derived from correlation matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "corrnet/common.hpp"
#include "corrnet/correlation.hpp"
#include "corrnet/matrix.hpp"
#include "corrnet/parallel.hpp"

namespace corrnet {

struct EigenSystem {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column j pairs with eigenvalues[j]
};

namespace detail {

inline double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

}  // namespace detail

// Cyclic Jacobi: sweep the strict upper triangle, annihilating each pivot
// with a Givens rotation, until the off-diagonal Frobenius norm falls below
// tol. Eigenvectors accumulate in V (started at identity).
inline EigenSystem sym_eigen(const Matrix& input, double tol = 1e-10,
                             int max_sweeps = 100) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n)
    throw InputError("sym_eigen: matrix must be square and non-empty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(input(i, j) - input(j, i)) > 1e-10)
        throw InputError("sym_eigen: matrix is not symmetric");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(input(i, j)))
        throw InputError("sym_eigen: matrix has non-finite entries");

  Matrix a = input;
  // Symmetrize exactly so rounding in the input cannot bias the sweeps.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }

  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  bool converged = detail::offdiag_norm(a) <= tol;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(p, k) = a(k, p);
          a(k, q) = s * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    converged = detail::offdiag_norm(a) <= tol;
  }
  if (!converged)
    throw Error("sym_eigen: Jacobi iteration failed to converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

// Fix each eigenvector's overall sign: the component at ref_index is made
// positive; if it is exactly zero the largest-magnitude component is made
// positive instead.
inline void orient(EigenSystem& es, std::size_t ref_index) {
  const std::size_t n = es.eigenvectors.rows();
  if (ref_index >= n) throw InputError("orient: reference index out of range");
  for (std::size_t j = 0; j < es.eigenvectors.cols(); ++j) {
    double pivot = es.eigenvectors(ref_index, j);
    if (pivot == 0.0) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(es.eigenvectors(i, j)) > std::abs(es.eigenvectors(best, j)))
          best = i;
      pivot = es.eigenvectors(best, j);
    }
    if (pivot < 0.0)
      for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, j) = -es.eigenvectors(i, j);
  }
}

inline double explained_variance(double eigenvalue, std::size_t n) {
  if (n == 0) throw InputError("explained_variance: empty matrix");
  return eigenvalue / static_cast<double>(n);
}

struct EigenSeries {
  std::vector<YearMonth> labels;
  Matrix eigenvalues;  // months x top_k, descending within a row
  Matrix explained;    // eigenvalues / n
  Matrix v1;           // months x assets, oriented first eigenvector
  Matrix v2;           // months x assets, oriented second eigenvector
  std::size_t top_k = 0;
};

inline EigenSeries eigen_series(const std::vector<CorrelationMatrix>& mats,
                                std::size_t ref_index, std::size_t top_k = 3) {
  if (mats.empty()) throw InputError("eigen_series: no input matrices");
  const std::size_t n = mats[0].n;
  if (top_k == 0 || top_k > n)
    throw InputError("eigen_series: top_k out of range");
  if (ref_index >= n) throw InputError("eigen_series: reference index out of range");

  EigenSeries out;
  out.top_k = top_k;
  out.labels.reserve(mats.size());
  for (const auto& m : mats) out.labels.push_back(m.label);
  out.eigenvalues = Matrix(mats.size(), top_k);
  out.explained = Matrix(mats.size(), top_k);
  out.v1 = Matrix(mats.size(), n);
  out.v2 = Matrix(mats.size(), n);

  parallel_for(mats.size(), [&](std::size_t m) {
    if (mats[m].n != n)
      throw InputError("eigen_series: matrix size mismatch at " + mats[m].label.str());
    EigenSystem es = sym_eigen(mats[m].values);
    orient(es, ref_index);
    for (std::size_t k = 0; k < top_k; ++k) {
      out.eigenvalues(m, k) = es.eigenvalues[k];
      out.explained(m, k) = explained_variance(es.eigenvalues[k], n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.v1(m, i) = es.eigenvectors(i, 0);
      if (n > 1) out.v2(m, i) = es.eigenvectors(i, 1);
    }
  });
  return out;
}

}  // namespace corrnet
