#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "nilcx/rational.hpp"

namespace nilcx {

// Dense exact matrix over a field F (Rat or Gauss).
template <class F>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<F> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, F(0)) {}

  F& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        if (x(i, k) == F(0)) continue;
        for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    assert(v.size() == cols);
    std::vector<F> w(rows, F(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!(v[j] == F(0))) w[i] += (*this)(i, j) * v[j];
    return w;
  }
};

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Mat<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m(sel, col) == F(0)) ++sel;
    if (sel == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(sel, j));
    F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == F(0)) continue;
      F f = m(i, col);
      for (std::size_t j = col; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
  return rref(m).size();
}

// Rows of the result form an RREF basis of {x : m x = 0}.
template <class F>
Mat<F> nullspace(Mat<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t nfree = m.cols - pivots.size();
  Mat<F> basis(nfree, m.cols);
  std::size_t k = 0;
  for (std::size_t col = 0; col < m.cols; ++col) {
    if (is_pivot[col]) continue;
    basis(k, col) = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(k, pivots[r]) = -m(r, col);
    ++k;
  }
  // re-reduce so callers get a canonical basis
  rref(basis);
  return basis;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
  assert(m.rows == m.cols);
  std::size_t n = m.rows;
  Mat<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv[n - 1] != n - 1) return std::nullopt;
  Mat<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F det(Mat<F> m) {
  assert(m.rows == m.cols);
  std::size_t n = m.rows;
  F d(1);
  for (std::size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
    std::size_t sel = row;
    while (sel < n && m(sel, col) == F(0)) ++sel;
    if (sel == n) return F(0);
    if (sel != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(row, j), m(sel, j));
      d = -d;
    }
    d = d * m(row, col);
    F inv = F(1) / m(row, col);
    for (std::size_t i = row + 1; i < n; ++i) {
      if (m(i, col) == F(0)) continue;
      F f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
  }
  return d;
}

// Any solution of m x = b (free variables set to 0), or nullopt.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& m, const std::vector<F>& b) {
  assert(b.size() == m.rows);
  Mat<F> aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;  // inconsistent
  std::vector<F> x(m.cols, F(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
  return x;
}

// Rank of the stack [m; extra rows].
template <class F>
std::size_t rank_with(const Mat<F>& m, const std::vector<std::vector<F>>& extra) {
  Mat<F> s(m.rows + extra.size(), m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) s(i, j) = m(i, j);
  for (std::size_t i = 0; i < extra.size(); ++i) {
    assert(extra[i].size() == m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) s(m.rows + i, j) = extra[i][j];
  }
  return rank(s);
}

template <class F>
Mat<F> from_rows(const std::vector<std::vector<F>>& rows, std::size_t cols) {
  Mat<F> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace nilcx
