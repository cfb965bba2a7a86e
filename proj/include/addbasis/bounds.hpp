#pragma once

// Size bounds for the constructions, compared exactly where the bound is
// irrational (logarithms are cleared by exponentiating both sides).

#include <cmath>
#include <cstddef>

#include "addbasis/rational.hpp"

namespace addbasis::bounds {

inline std::size_t floor_log2(std::size_t n) {
  std::size_t j = 0;
  while ((std::size_t{2} << j) <= n) ++j;
  return j;
}

/// Rounding a rational k-basis: at most two integers per element.
inline std::size_t rounding_bound(std::size_t n) { return 2 * n; }

/// n + 2n(1 + floor(log2 n)): one non-negative element per magnitude plus two per index per level.
inline std::size_t dyadic_level_count_bound(std::size_t n) { return n + 2 * n * (1 + floor_log2(n)); }

/// size <= 3n + 2n log2 n, decided exactly: 2^(size - 3n) <= n^(2n).
inline bool within_dyadic_bound(std::size_t size, std::size_t n) {
  if (size <= 3 * n) return true;
  if (n <= 1) return false;
  const Integer lhs = Integer(1) << (size - 3 * n);
  return lhs <= boost::multiprecision::pow(Integer(n), static_cast<unsigned>(2 * n));
}

inline double dyadic_bound(std::size_t n) {
  const double dn = static_cast<double>(n);
  return 3 * dn + 2 * dn * std::log2(dn);
}

/// size <= 2 n^3 k log2 k, decided exactly: 2^size <= k^(2 n^3 k).
inline bool within_higher_order_bound(std::size_t size, std::size_t n, std::size_t k) {
  const Integer lhs = Integer(1) << size;
  const auto exponent = static_cast<unsigned>(2 * n * n * n * k);
  return lhs <= boost::multiprecision::pow(Integer(k), exponent);
}

inline double higher_order_bound(std::size_t n, std::size_t k) {
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return 2 * dn * dn * dn * dk * std::log2(dk);
}

/// Natural-number k-basis: 16 k log2 k n^3.
inline double natural_basis_bound(std::size_t n, std::size_t k) {
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return 16 * dk * std::log2(dk) * dn * dn * dn;
}

/// Smallest m >= 0 with 2^m >= 3k / step, i.e. ceil(log2(3k / step)).
inline unsigned dyadic_level_cap(std::size_t k, const Rational& step) {
  const Rational goal = Rational(3 * k) / step;
  unsigned m = 0;
  Rational p = 1;
  while (p < goal) {
    p *= 2;
    ++m;
  }
  return m;
}

/// Literal size of the large-scale cover: n(k+1) elements per level.
inline std::size_t large_scale_size_bound(std::size_t n, std::size_t k, const Rational& step) {
  return n * (k + 1) * (dyadic_level_cap(k, step) + 1);
}

/// n k log2(3k / step), the real-valued form.
inline double large_scale_bound(std::size_t n, std::size_t k, const Rational& step) {
  const double ratio = (Rational(3 * k) / step).to_double();
  return static_cast<double>(n * k) * std::log2(ratio);
}

}  // namespace addbasis::bounds
