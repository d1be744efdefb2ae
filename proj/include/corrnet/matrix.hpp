#pragma once

#include <cstddef>
#include <vector>

namespace corrnet {

// Dense row-major matrix of doubles. Nothing fancy: the largest instances in
// this toolkit are month-by-month tables of a few hundred rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return d_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  double* row(std::size_t i) { return d_.data() + i * cols_; }
  const double* row(std::size_t i) const { return d_.data() + i * cols_; }

  std::vector<double>& data() { return d_; }
  const std::vector<double>& data() const { return d_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> d_;
};

}  // namespace corrnet
