#pragma once

// Seeded instance generators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/random.hpp"
#include "addbasis/rational.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis {

enum class Family { PowerFamily, RandomRationalBasis, RandomSignedInteger };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::PowerFamily: return "power-family";
    case Family::RandomRationalBasis: return "random-basis";
    case Family::RandomSignedInteger: return "signed-basis";
  }
  return "?";
}

struct GeneratorSpec {
  Family family = Family::PowerFamily;
  std::size_t n = 1;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::uint64_t base = 4;
  std::uint64_t denominator_bound = 1;
  std::uint64_t magnitude_bound = 1;
  bool non_negative = false;  ///< random-basis only: draw from p >= 0
};

struct GeneratedSet {
  ElementSet values;
  GeneratorSpec spec;
};

/// C = {±base^r : 1 <= r <= n} and A = (C + C) ∩ N. C is a 2-basis of A over Z of size 2n.
struct PowerFamily {
  ElementSet witness;  // C
  ElementSet targets;  // A
};

inline PowerFamily gen_power_family(std::size_t n, std::uint64_t base = 4) {
  if (n < 1) throw InvalidParameter("power family needs n >= 1");
  if (base < 2) throw InvalidParameter("power family base must be at least 2");
  std::vector<Rational> c;
  Integer power = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    power *= base;
    c.emplace_back(power);
    c.push_back(-Rational(power));
  }
  PowerFamily out;
  out.witness = ElementSet(std::move(c));
  out.targets = k_fold_sumset(out.witness, 2).non_negative_part();
  return out;
}

namespace detail {

inline std::uint64_t euler_phi(std::uint64_t q) {
  std::uint64_t result = q;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    result -= result / p;
  }
  if (q > 1) result -= result / q;
  return result;
}

}  // namespace detail

/// Number of distinct values p/q with 1 <= q <= denominator_bound and |p| <= magnitude_bound * q
/// (p >= 0 when non_negative).
inline std::uint64_t rational_grid_size(std::uint64_t denominator_bound, std::uint64_t magnitude_bound,
                                        bool non_negative = false) {
  const std::uint64_t sides = non_negative ? 1 : 2;
  std::uint64_t count = sides * magnitude_bound + 1;  // q = 1, including 0
  for (std::uint64_t q = 2; q <= denominator_bound; ++q) count += sides * magnitude_bound * detail::euler_phi(q);
  return count;
}

/// n distinct rationals drawn uniformly from the grid of reduced fractions p/q,
/// 1 <= q <= denominator_bound, |p/q| <= magnitude_bound.
inline GeneratedSet gen_random_rational_basis(std::size_t n, std::uint64_t denominator_bound,
                                              std::uint64_t magnitude_bound, std::uint64_t seed,
                                              bool non_negative = false) {
  if (denominator_bound < 1 || magnitude_bound < 1) throw InvalidParameter("grid bounds must be at least 1");
  if (denominator_bound > (1U << 20) || magnitude_bound > (1U << 20))
    throw InvalidParameter("grid bounds must be at most 2^20");
  if (rational_grid_size(denominator_bound, magnitude_bound, non_negative) < n)
    throw InvalidParameter("grid has fewer than n values");

  // Uniform over (p, q) pairs, then rejection of unreduced pairs, is uniform
  // over distinct values: each has exactly one reduced representative.
  const std::uint64_t sides = non_negative ? 1 : 2;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
  for (std::uint64_t q = 1; q <= denominator_bound; ++q) {
    total += sides * magnitude_bound * q + 1;
    cumulative.push_back(total);
  }
  std::mt19937_64 rng(seed);
  std::set<Rational> picked;
  while (picked.size() < n) {
    const std::uint64_t u = uniform_below(rng, total);
    const auto q = static_cast<std::int64_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin() + 1);
    const auto span = static_cast<std::int64_t>(magnitude_bound) * q;
    const std::int64_t p = uniform_between(rng, non_negative ? 0 : -span, span);
    if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
    picked.insert(Rational::reduce(p, q));
  }
  GeneratorSpec spec;
  spec.family = Family::RandomRationalBasis;
  spec.n = n;
  spec.seed = seed;
  spec.denominator_bound = denominator_bound;
  spec.magnitude_bound = magnitude_bound;
  spec.non_negative = non_negative;
  return {ElementSet(std::vector<Rational>(picked.begin(), picked.end())), spec};
}

/// n distinct magnitudes in [1, magnitude_bound], each carried with sign +, - or both.
inline GeneratedSet gen_random_signed_integer_basis(std::size_t n, std::uint64_t magnitude_bound,
                                                    std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("n must be at least 1");
  if (magnitude_bound < n) throw InvalidParameter("magnitude bound must be at least n");
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> magnitudes;
  while (magnitudes.size() < n) magnitudes.insert(1 + uniform_below(rng, magnitude_bound));
  std::vector<Rational> out;
  for (auto m : magnitudes) {
    const std::uint64_t pattern = uniform_below(rng, 3);  // 0: +, 1: -, 2: ±
    if (pattern != 1) out.emplace_back(m);
    if (pattern != 0) out.push_back(-Rational(m));
  }
  GeneratorSpec spec;
  spec.family = Family::RandomSignedInteger;
  spec.n = n;
  spec.seed = seed;
  spec.magnitude_bound = magnitude_bound;
  return {ElementSet(std::move(out)), spec};
}

}  // namespace addbasis
