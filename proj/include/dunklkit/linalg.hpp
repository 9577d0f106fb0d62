#pragma once

// Small dense matrices over a field and the stacked (over-determined,
// consistent) linear solve used by the intertwiner tables.

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dunklkit {

template <class F>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<F> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  F& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (FieldTraits<F>::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    if (v.size() != cols) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<F> out(rows, F(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
};

template <class F>
double max_abs_diff(const Matrix<F>& a, const Matrix<F>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, FieldTraits<F>::magnitude(a.data[i] - b.data[i]));
  return m;
}

/// Raised when a stacked system has no unique solution.
class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves A X = B for X where A is (m x n) with m >= n, assumed to have a
/// unique exact solution. Gauss-Jordan elimination with row pivoting; exact
/// fields pick the first nonzero pivot, floating fields the largest. Throws
/// InconsistentSystem when A is rank deficient or the residual rows of the
/// reduced system do not vanish (to `tol` relative scale for doubles).
template <class F>
Matrix<F> solve_stacked(Matrix<F> a, Matrix<F> b, double tol = 1e-9) {
  using T = FieldTraits<F>;
  if (a.rows != b.rows) throw std::invalid_argument("solve_stacked: row mismatch");
  const std::size_t m = a.rows, n = a.cols, r = b.cols;
  // Rank decisions are relative to each column's original size.
  std::vector<double> col_scale(n, 1.0);
  if constexpr (!T::exact) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i) s = std::max(s, T::magnitude(a(i, j)));
      col_scale[j] = s == 0 ? 1.0 : s;
    }
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = m;
    if constexpr (T::exact) {
      for (std::size_t i = row; i < m; ++i)
        if (!T::is_zero(a(i, col))) {
          piv = i;
          break;
        }
    } else {
      double best = tol * col_scale[col];
      for (std::size_t i = row; i < m; ++i)
        if (T::magnitude(a(i, col)) > best) {
          best = T::magnitude(a(i, col));
          piv = i;
        }
    }
    if (piv == m) throw InconsistentSystem("rank-deficient system at column " + std::to_string(col));
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
      for (std::size_t j = 0; j < r; ++j) std::swap(b(piv, j), b(row, j));
    }
    const F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
    for (std::size_t j = 0; j < r; ++j) b(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || T::is_zero(a(i, col))) continue;
      const F f = a(i, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
      for (std::size_t j = 0; j < r; ++j) b(i, j) -= f * b(row, j);
    }
    ++row;
  }
  // Remaining rows must be consistent.
  double bscale = 0;
  if constexpr (!T::exact) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) bscale = std::max(bscale, T::magnitude(b(i, j)));
    if (bscale == 0) bscale = 1;
  }
  for (std::size_t i = n; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if constexpr (T::exact) {
        if (!T::is_zero(b(i, j))) throw InconsistentSystem("inconsistent stacked system");
      } else {
        if (T::magnitude(b(i, j)) > 1e3 * tol * bscale)
          throw InconsistentSystem("inconsistent stacked system");
      }
    }
  Matrix<F> x(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) x(i, j) = b(i, j);
  return x;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  if (a.rows != a.cols) throw std::invalid_argument("inverse of non-square matrix");
  return solve_stacked(a, Matrix<F>::identity(a.rows));
}

}  // namespace dunklkit
