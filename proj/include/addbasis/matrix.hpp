#pragma once

// Dense matrices over the rationals and exact Gauss-Jordan elimination.

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "addbasis/error.hpp"
#include "addbasis/rational.hpp"

namespace addbasis {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  /// Rows must all have length `cols`; `cols` is needed when `rows` is empty.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InvalidInput("row length does not match column count");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return entries_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return entries_[r * cols_ + c];
  }

  std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  RationalVector operator*(std::span<const Rational> x) const {
    if (x.size() != cols_) throw InvalidInput("matrix-vector dimension mismatch");
    RationalVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational acc;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!(*this)(r, c).is_zero() && !x[c].is_zero()) acc += (*this)(r, c) * x[c];
      }
      y[r] = std::move(acc);
    }
    return y;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct EchelonForm {
  RationalMatrix reduced;            ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row, increasing
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form. Exact, no pivot tolerance.
inline EchelonForm row_echelon(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(pivot_row, c));
    }
    const Rational inv = m(pivot_row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(pivot_row, c).is_zero()) m(r, c) -= factor * m(pivot_row, c);
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return row_echelon(m).rank(); }

/// Some x with M x = b, free variables set to zero; nullopt when inconsistent.
inline std::optional<RationalVector> solve_linear(const RationalMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw InvalidInput("right-hand side length does not match row count");
  RationalMatrix augmented(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
    augmented(r, m.cols()) = b[r];
  }
  const EchelonForm ef = row_echelon(std::move(augmented));
  if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t i = 0; i < ef.pivots.size(); ++i) x[ef.pivots[i]] = ef.reduced(i, m.cols());
  return x;
}

/// Basis of { x : M x = 0 }, one vector per free column, in increasing free-column order.
inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  const EchelonForm ef = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ef.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace addbasis
