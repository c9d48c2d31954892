#pragma once

// Dense Gaussian elimination over either backend. Exact rank decisions in the
// rational backend; relative pivot threshold in float.

#include "ssq/scalar.hpp"

#include <cstddef>
#include <vector>

namespace ssq {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <class S>
struct LinearSolution {
  std::vector<S> x;      // valid only when unique()
  std::size_t rank = 0;
  bool consistent = false;
  S residual{};          // max |A x - b| for the returned x (0 when exact)

  bool unique(std::size_t unknowns) const { return consistent && rank == unknowns; }
};

namespace detail {

template <class S>
bool negligible(const S& v, const S& scale) {
  if constexpr (is_exact_v<S>) {
    (void)scale;
    return is_zero(v);
  } else {
    return std::fabs(v) <= 1e-11 * (scale > 1.0 ? scale : 1.0);
  }
}

}  // namespace detail

// Solves A x = b for a possibly rectangular system. Reports the rank and
// whether the system is consistent; x is filled when the solution is unique.
template <class S>
LinearSolution<S> solve(Matrix<S> a, std::vector<S> b) {
  const Matrix<S> a0 = a;
  const std::vector<S> b0 = b;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  S scale{0};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      S v = abs_value(a(r, c));
      if (v > scale) scale = v;
    }
  }

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = m;
    S best_mag{0};
    for (std::size_t r = row; r < m; ++r) {
      S mag = abs_value(a(r, col));
      if (detail::negligible(mag, scale)) continue;
      if constexpr (is_exact_v<S>) {
        best = r;
        break;
      } else {
        if (best == m || mag > best_mag) {
          best = r;
          best_mag = mag;
        }
      }
    }
    if (best == m) continue;
    if (best != row) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(row, c), a(best, c));
      std::swap(b[row], b[best]);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      S f = a(r, col) / a(row, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(row, c);
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  LinearSolution<S> out;
  out.rank = pivot_col.size();
  S bscale{0};
  for (const auto& v : b) {
    S mag = abs_value(v);
    if (mag > bscale) bscale = mag;
  }
  out.consistent = true;
  for (std::size_t r = out.rank; r < m; ++r) {
    if (!detail::negligible(b[r], bscale)) {
      out.consistent = false;
      S mag = abs_value(b[r]);
      if (mag > out.residual) out.residual = mag;
    }
  }
  if (out.consistent && out.rank == n) {
    out.x.assign(n, S(0));
    for (std::size_t i = 0; i < out.rank; ++i) out.x[pivot_col[i]] = b[i] / a(i, pivot_col[i]);
    for (std::size_t r = 0; r < m; ++r) {
      S acc = -b0[r];
      for (std::size_t c = 0; c < n; ++c) acc += a0(r, c) * out.x[c];
      S mag = abs_value(acc);
      if (mag > out.residual) out.residual = mag;
    }
  }
  return out;
}

template <class S>
std::size_t rank(const Matrix<S>& a) {
  return solve(a, std::vector<S>(a.rows(), S(0))).rank;
}

}  // namespace ssq
