#pragma once

// Exact rational scalars.
//
// Values whose numerator and denominator both fit in 64 bits are stored
// inline and combined with 128-bit intermediates; anything larger spills to
// boost::multiprecision::cpp_int. Every value is kept in canonical form
// (positive denominator, coprime parts) and a value that fits the inline
// form is never stored big, so equality and hashing can compare
// representations directly.

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "addbasis/error.hpp"

namespace addbasis {

using Integer = boost::multiprecision::cpp_int;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

// INT64_MIN is excluded so that negation and abs stay inline.
inline constexpr std::int64_t kSmallMin = std::numeric_limits<std::int64_t>::min() + 1;
inline constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

constexpr u128 magnitude(i128 v) noexcept {
  return v < 0 ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
}

constexpr u128 gcd_u128(u128 a, u128 b) noexcept {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr bool fits_small(i128 v) noexcept { return v >= kSmallMin && v <= kSmallMax; }

inline bool fits_small(const Integer& v) { return v >= kSmallMin && v <= kSmallMax; }

inline Integer to_big(i128 v) {
  const u128 m = magnitude(v);
  Integer r = static_cast<std::uint64_t>(m >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(m);
  if (v < 0) r = -r;
  return r;
}

inline bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline Integer parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  const bool negative = s.front() == '-';
  if (s.front() == '-' || s.front() == '+') s.remove_prefix(1);
  const Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace detail

class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (value >= detail::kSmallMin) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    } else {
      if (value <= static_cast<std::uint64_t>(detail::kSmallMax)) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    }
    big_ = std::make_unique<Big>(Big{Integer(value), Integer(1)});
  }

  explicit Rational(const Integer& value) {
    if (detail::fits_small(value)) {
      num_ = static_cast<std::int64_t>(value);
    } else {
      big_ = std::make_unique<Big>(Big{value, Integer(1)});
    }
  }

  Rational(const Rational& other)
      : num_(other.num_),
        den_(other.den_),
        big_(other.big_ ? std::make_unique<Big>(*other.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other) {
    if (this != &other) {
      num_ = other.num_;
      den_ = other.den_;
      big_ = other.big_ ? std::make_unique<Big>(*other.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// p/q in canonical form. Throws DivisionByZero when q == 0.
  static Rational reduce(const Integer& p, const Integer& q) {
    if (q == 0) throw DivisionByZero();
    return from_big(p, q);
  }

  static Rational reduce(std::int64_t p, std::int64_t q) {
    if (q == 0) throw DivisionByZero();
    return from_i128(p, q);
  }

  /// Parses "12", "-3", "6/4", "3/-6"; the result is re-canonicalized.
  static Rational parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_integer(text));
    const Integer p = detail::parse_integer(text.substr(0, slash));
    const Integer q = detail::parse_integer(text.substr(slash + 1));
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return reduce(p, q);
  }

  Integer numerator() const { return big_ ? big_->num : Integer(num_); }
  Integer denominator() const { return big_ ? big_->den : Integer(den_); }

  bool is_small() const noexcept { return !big_; }
  bool is_integer() const noexcept { return big_ ? big_->den == 1 : den_ == 1; }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  int sign() const noexcept {
    if (big_) return big_->num.sign();
    return (num_ > 0) - (num_ < 0);
  }

  std::string to_string() const {
    if (big_) {
      std::string s = big_->num.str();
      if (big_->den != 1) s += "/" + big_->den.str();
      return s;
    }
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  double to_double() const {
    if (!big_) return static_cast<double>(num_) / static_cast<double>(den_);
    return static_cast<double>(boost::multiprecision::cpp_rational(big_->num, big_->den));
  }

  std::size_t hash() const {
    std::size_t seed = 0;
    if (big_) {
      boost::hash_combine(seed, boost::multiprecision::hash_value(big_->num));
      boost::hash_combine(seed, boost::multiprecision::hash_value(big_->den));
    } else {
      boost::hash_combine(seed, num_);
      boost::hash_combine(seed, den_);
    }
    return seed;
  }

  Rational operator-() const {
    if (!big_) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return canonical_big(-big_->num, big_->den);
  }

  Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
  Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
  Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
  Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      using detail::i128;
      if (a.den_ == 1 && b.den_ == 1) return from_i128_integer(i128(a.num_) + b.num_);
      if (a.den_ == b.den_) return from_i128(i128(a.num_) + b.num_, a.den_);
      return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    return from_big(a.numerator() * b.denominator() + b.numerator() * a.denominator(),
                    a.denominator() * b.denominator());
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      using detail::i128;
      if (a.den_ == 1 && b.den_ == 1) return from_i128_integer(i128(a.num_) - b.num_);
      if (a.den_ == b.den_) return from_i128(i128(a.num_) - b.num_, a.den_);
      return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    return from_big(a.numerator() * b.denominator() - b.numerator() * a.denominator(),
                    a.denominator() * b.denominator());
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    if (!a.big_ && !b.big_) {
      using detail::i128;
      using detail::u128;
      // Cross-cancel first; the product of coprime halves is already canonical.
      const auto g1 = static_cast<std::int64_t>(detail::gcd_u128(detail::magnitude(a.num_), u128(b.den_)));
      const auto g2 = static_cast<std::int64_t>(detail::gcd_u128(detail::magnitude(b.num_), u128(a.den_)));
      const i128 n = i128(a.num_ / g1) * (b.num_ / g2);
      const i128 d = i128(a.den_ / g2) * (b.den_ / g1);
      return from_canonical_i128(n, d);
    }
    return from_big(a.numerator() * b.numerator(), a.denominator() * b.denominator());
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.inverse();
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    if (a.big_ || b.big_) {
      return a.big_ && b.big_ && a.big_->num == b.big_->num && a.big_->den == b.big_->den;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return a.num_ <=> b.num_;
      using detail::i128;
      const i128 lhs = i128(a.num_) * b.den_;
      const i128 rhs = i128(b.num_) * a.den_;
      return lhs < rhs ? std::strong_ordering::less
                       : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    const Integer lhs = a.numerator() * b.denominator();
    const Integer rhs = b.numerator() * a.denominator();
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (!big_) {
      Rational r;
      r.num_ = num_ < 0 ? -den_ : den_;
      r.den_ = num_ < 0 ? -num_ : num_;
      return r;
    }
    return big_->num < 0 ? canonical_big(-big_->den, -big_->num) : canonical_big(big_->den, big_->num);
  }

  /// Floor and ceiling as arbitrary-precision integers.
  std::pair<Integer, Integer> floor_ceil() const {
    if (!big_) {
      const auto [f, c] = small_floor_ceil();
      return {Integer(f), Integer(c)};
    }
    Integer q = big_->num / big_->den;  // truncates toward zero
    const Integer r = big_->num % big_->den;
    if (r == 0) return {q, q};
    if (r < 0) return {q - 1, q};
    return {q, q + 1};
  }

  Rational floor() const {
    if (!big_) return Rational(small_floor_ceil().first);
    return Rational(floor_ceil().first);
  }

  Rational ceil() const {
    if (!big_) return Rational(small_floor_ceil().second);
    return Rational(floor_ceil().second);
  }

 private:
  struct Big {
    Integer num;
    Integer den;
  };

  std::pair<std::int64_t, std::int64_t> small_floor_ceil() const noexcept {
    const std::int64_t q = num_ / den_;
    const std::int64_t r = num_ % den_;
    if (r == 0) return {q, q};
    if (r < 0) return {q - 1, q};
    return {q, q + 1};
  }

  static Rational from_i128_integer(detail::i128 n) {
    if (detail::fits_small(n)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      return r;
    }
    return canonical_big(detail::to_big(n), Integer(1));
  }

  // n/d with d > 0 and gcd(|n|, d) = 1.
  static Rational from_canonical_i128(detail::i128 n, detail::i128 d) {
    if (detail::fits_small(n) && detail::fits_small(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    return canonical_big(detail::to_big(n), detail::to_big(d));
  }

  static Rational from_i128(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    const auto g = static_cast<detail::i128>(detail::gcd_u128(detail::magnitude(n), detail::magnitude(d)));
    return from_canonical_i128(n / g, d / g);
  }

  static Rational from_big(Integer n, Integer d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    const Integer g = boost::multiprecision::gcd(n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
    return canonical_big(std::move(n), std::move(d));
  }

  static Rational canonical_big(Integer n, Integer d) {
    Rational r;
    if (detail::fits_small(n) && detail::fits_small(d)) {
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
    } else {
      r.big_ = std::make_unique<Big>(Big{std::move(n), std::move(d)});
    }
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<Big> big_;
};

inline Rational reduce(const Integer& p, const Integer& q) { return Rational::reduce(p, q); }

inline std::pair<Integer, Integer> floor_ceil(const Rational& x) { return x.floor_ceil(); }

inline Rational floor(const Rational& x) { return x.floor(); }
inline Rational ceil(const Rational& x) { return x.ceil(); }

/// x - floor(x), always in [0, 1).
inline Rational fractional_part(const Rational& x) { return x - x.floor(); }

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

/// Nearest integer, ties to even.
inline Rational round_half_even(const Rational& x) {
  const Rational lo = x.floor();
  const Rational diff = x - lo;
  const Rational half = Rational::reduce(1, 2);
  if (diff < half) return lo;
  if (diff > half) return lo + 1;
  return (lo.numerator() % 2 == 0) ? lo : lo + 1;
}

/// 2^exponent, exponent may be negative.
inline Rational pow2(int exponent) {
  Integer p = 1;
  p <<= static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent < 0 ? Rational::reduce(Integer(1), p) : Rational(p);
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline std::string to_string(const Rational& x) { return x.to_string(); }

}  // namespace addbasis

template <>
struct std::hash<addbasis::Rational> {
  std::size_t operator()(const addbasis::Rational& r) const { return r.hash(); }
};
