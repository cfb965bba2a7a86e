#pragma once

// Constructive upper bounds for additive bases under a change of domain:
//
//  * rounding a rational k-basis to an integer one (at most doubling it),
//  * the dyadic 2-basis over N for sets generated by a 2-basis over Z,
//  * the higher-order machinery over non-negative rationals: an arithmetic
//    progression approximating the set, a dyadic cover for sums at the
//    progression's scale, a reduction to the remainders for smaller sums,
//    and the recursion that combines them.

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "addbasis/bounds.hpp"
#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/rational.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis {

/// { floor(b) } ∪ { ceil(b) }. Integer sums in kB stay in kC.
inline ElementSet round_to_integer_basis(const ElementSet& basis) {
  std::vector<Rational> out;
  out.reserve(2 * basis.size());
  for (const auto& b : basis) {
    out.push_back(b.floor());
    out.push_back(b.ceil());
  }
  return ElementSet(std::move(out));
}

/// 2-basis over N for (B + B) ∩ N, where B is a set of integers.
///
/// With x_1 < ... < x_n the distinct magnitudes in B, keeps B ∩ N and adds
/// x_r - x_s for every level j <= floor(log2 n) and index pair s <= r with
/// s = 2^j floor(r / 2^j) or r = 2^j ceil(s / 2^j). Any x_r - x_t then splits
/// as (x_r - x_s) + (x_s - x_t) at the highest bit where r and t differ.
inline ElementSet dyadic_two_basis(const ElementSet& basis) {
  if (basis.empty()) throw InvalidInput("dyadic construction needs a nonempty set");
  if (!basis.all_integers()) throw InvalidInput("dyadic construction needs integer elements");

  std::vector<Rational> magnitudes;
  magnitudes.reserve(basis.size());
  for (const auto& b : basis) magnitudes.push_back(abs(b));
  const ElementSet x(std::move(magnitudes));
  const std::size_t n = x.size();

  std::vector<Rational> out(basis.non_negative_part().elements());
  for (std::size_t step = 1; step <= n; step *= 2) {
    for (std::size_t r = 1; r <= n; ++r) {
      const std::size_t s = step * (r / step);
      if (s >= 1) out.push_back(x[r - 1] - x[s - 1]);
    }
    for (std::size_t s = 1; s <= n; ++s) {
      const std::size_t r = step * ((s + step - 1) / step);
      if (r <= n) out.push_back(x[r - 1] - x[s - 1]);
    }
  }
  return ElementSet(std::move(out));
}

/// x_i = multiples[i] * step + remainders[i], with every remainder within step / accuracy
/// and the first and last remainders equal.
struct ApDecomposition {
  Rational step;                       // L
  std::vector<Integer> multiples;      // y
  std::vector<Rational> remainders;    // z
  unsigned accuracy = 2;               // C

  /// Checks all four defining properties against the input vector.
  bool satisfies_invariants(std::span<const Rational> x) const {
    const std::size_t n = x.size();
    if (n == 0 || multiples.size() != n || remainders.size() != n || step.sign() <= 0) return false;
    const Rational tolerance = step / Rational(accuracy);
    for (std::size_t i = 0; i < n; ++i) {
      if (Rational(multiples[i]) * step + remainders[i] != x[i]) return false;
      if (abs(remainders[i]) > tolerance) return false;
    }
    if (remainders.front() != remainders.back()) return false;
    return step >= pow(Rational(accuracy), static_cast<unsigned>(n + 1)).inverse();
  }
};

/// Pigeonhole search for a progression step approximating every x_i at once.
///
/// λ ranges over multiples of α = 1 / (x_n - x_1), the values at which the
/// first and last coordinates of λx agree modulo 1. Each λ is bucketed by
/// floor(C · frac(λ x_i)) per coordinate; among C^n + 1 multiples two share a
/// bucket, and their difference λ* gives step = 1 / λ*.
inline ApDecomposition find_ap_approximation(std::span<const Rational> x, unsigned accuracy) {
  const std::size_t n = x.size();
  if (accuracy < 2) throw InvalidInput("accuracy C must be at least 2");
  if (n < 2) throw InvalidInput("need at least two points");
  if (x.front().sign() < 0) throw InvalidInput("points must be non-negative");
  if (x.back() != 1) throw InvalidInput("largest point must be 1");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i - 1] < x[i])) throw InvalidInput("points must be strictly increasing");
  const Rational c(accuracy);
  if (x.front() > 1 - c.inverse()) throw InvalidInput("smallest point must be at most 1 - 1/C");

  const Rational alpha = (x.back() - x.front()).inverse();
  std::vector<Rational> increment(n);
  for (std::size_t i = 0; i < n; ++i) increment[i] = fractional_part(alpha * x[i]);

  const Integer max_steps = boost::multiprecision::pow(Integer(accuracy), static_cast<unsigned>(n));
  std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, boost::hash<std::vector<std::uint32_t>>> seen;
  std::vector<Rational> frac(n);  // frac(j α x_i)
  std::vector<std::uint32_t> box(n);
  std::uint64_t earlier = 0;
  std::uint64_t later = 0;
  for (std::uint64_t j = 0;; ++j) {
    if (Integer(j) > max_steps) throw ConstructionFailure("no bucket collision within C^n + 1 multiples");
    for (std::size_t i = 0; i < n; ++i) box[i] = static_cast<std::uint32_t>((c * frac[i]).floor().numerator());
    const auto [it, inserted] = seen.emplace(box, j);
    if (!inserted) {
      earlier = it->second;
      later = j;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) frac[i] = fractional_part(frac[i] + increment[i]);
  }

  const Rational lambda = Rational(later - earlier) * alpha;
  ApDecomposition d;
  d.step = lambda.inverse();
  d.accuracy = accuracy;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational y = round_half_even(x[i] * lambda);
    d.multiples.push_back(y.numerator());
    d.remainders.push_back(x[i] - y * d.step);
  }
  if (!d.satisfies_invariants(x)) throw ConstructionFailure("progression approximation violates its invariants");
  return d;
}

/// { |z_i| }: the remainders that carry every sum of magnitude below step / 2.
inline ElementSet small_scale_reduction(const ApDecomposition& d) {
  std::vector<Rational> out;
  out.reserve(d.remainders.size());
  for (const auto& z : d.remainders) out.push_back(abs(z));
  return ElementSet(std::move(out));
}

struct DyadicCoverSpec {
  unsigned max_level = 0;           ///< ceil(log2(3k / L))
  std::vector<ElementSet> levels;   ///< X_0 ... X_max_level

  ElementSet combined() const {
    std::vector<Rational> all;
    for (const auto& level : levels) all.insert(all.end(), level.begin(), level.end());
    return ElementSet(std::move(all)).non_negative_part();
  }
};

/// Per-level sets covering every sum in k(B ∪ -B) that is at least step / 2.
///
/// Level m holds x_i - (floor(2^m x_i) - p) / 2^m for 0 <= p < k and
/// ceil(2^m x_i) / 2^m - x_i. Points may include 0; the largest must be 1.
inline DyadicCoverSpec large_scale_levels(std::span<const Rational> x, const Rational& step, std::size_t k) {
  if (step.sign() <= 0 || step > 1) throw InvalidInput("step L must lie in (0, 1]");
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (x.empty() || x.back() != 1) throw InvalidInput("largest point must be 1");
  if (x.front().sign() < 0) throw InvalidInput("points must be non-negative");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i - 1] < x[i])) throw InvalidInput("points must be strictly increasing");

  DyadicCoverSpec spec;
  spec.max_level = bounds::dyadic_level_cap(k, step);
  // The top level must push every target's rounded difference above zero.
  if (!(pow2(static_cast<int>(spec.max_level)) * step / 2 - Rational(k) > 0)) {
    throw ConstructionFailure("dyadic levels stop before the rounded differences turn positive");
  }
  for (unsigned m = 0; m <= spec.max_level; ++m) {
    const Rational scale = pow2(static_cast<int>(m));
    const Rational unit = scale.inverse();
    std::vector<Rational> level;
    level.reserve(x.size() * (k + 1));
    for (const auto& xi : x) {
      const Rational scaled = xi * scale;
      const Rational lo = scaled.floor();
      for (std::size_t p = 0; p < k; ++p) level.push_back(xi - (lo - Rational(p)) * unit);
      level.push_back(scaled.ceil() * unit - xi);
    }
    spec.levels.push_back(ElementSet(std::move(level)).non_negative_part());
  }
  return spec;
}

inline ElementSet large_scale_cover(std::span<const Rational> x, const Rational& step, std::size_t k) {
  return large_scale_levels(x, step, k).combined();
}

/// One pass of the higher-order recursion, recorded for reporting.
struct HigherOrderStage {
  std::size_t points = 0;       ///< n at this stage
  bool near_top = false;        ///< smallest normalized point >= 1 - 1/C, handled with step 1
  Rational step;                ///< L used for the large-scale cover
  Rational scale;               ///< max element at this stage
  std::size_t cover_size = 0;   ///< size of this stage's large-scale cover
};

struct HigherOrderResult {
  ElementSet basis;
  std::vector<HigherOrderStage> stages;
};

/// X ⊆ Q≥0 with (k(B ∪ -B)) ∩ Q≥0 ⊆ kX for a finite B ⊆ Q≥0.
///
/// Each stage normalizes the current set to max 1, covers the sums at least
/// L/2 with the dyadic levels, and continues with the remainder magnitudes,
/// which number at most n - 1 after a progression stage.
inline HigherOrderResult higher_order_nonneg_basis_traced(const ElementSet& basis, std::size_t k) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (basis.empty()) throw InvalidInput("basis must be nonempty");
  if (!basis.all_non_negative()) throw InvalidInput("basis must be non-negative");

  const unsigned accuracy = static_cast<unsigned>(3 * k);
  const Rational near_top_threshold = 1 - Rational(accuracy).inverse();
  HigherOrderResult result;
  std::vector<Rational> collected;
  ElementSet current = basis;

  while (true) {
    if (current.max().is_zero()) {
      collected.emplace_back(0);
      break;
    }
    const Rational top = current.max();
    if (current.size() == 1) {
      collected.emplace_back(0);
      collected.push_back(top);
      break;
    }
    const ElementSet normalized = current.scaled(top.inverse());
    HigherOrderStage stage;
    stage.points = normalized.size();
    stage.scale = top;

    if (normalized.min() >= near_top_threshold) {
      stage.near_top = true;
      stage.step = 1;
      const ElementSet cover = large_scale_cover(normalized.view(), stage.step, k);
      stage.cover_size = cover.size();
      for (const auto& v : cover) collected.push_back(v * top);
      std::vector<Rational> next;
      for (const auto& v : normalized) next.push_back(abs(v - 1) * top);
      current = ElementSet(std::move(next));
      result.stages.push_back(std::move(stage));
      continue;
    }

    const ApDecomposition d = find_ap_approximation(normalized.view(), accuracy);
    stage.step = d.step;
    const ElementSet cover = large_scale_cover(normalized.view(), d.step, k);
    stage.cover_size = cover.size();
    for (const auto& v : cover) collected.push_back(v * top);
    ElementSet next = small_scale_reduction(d);
    if (next.size() >= normalized.size()) {
      throw ConstructionFailure("remainder set did not shrink");
    }
    current = next.scaled(top);
    result.stages.push_back(std::move(stage));
  }
  result.basis = ElementSet(std::move(collected));
  return result;
}

inline ElementSet higher_order_nonneg_basis(const ElementSet& basis, std::size_t k) {
  return higher_order_nonneg_basis_traced(basis, k).basis;
}

/// k-basis over N for a set A ⊆ N ∩ kB with B ⊆ Z: the higher-order cover of
/// B's magnitudes, with every element replaced by its floor and ceiling.
inline ElementSet natural_k_basis(const ElementSet& targets, const ElementSet& basis, std::size_t k) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (!targets.all_integers() || !targets.all_non_negative())
    throw InvalidInput("targets must be natural numbers");
  if (!basis.all_integers()) throw InvalidInput("basis must consist of integers");
  for (const auto& a : targets) {
    if (!k_sum_membership(a, basis, k)) {
      throw InvalidWitness("target " + a.to_string() + " is not a sum of " + std::to_string(k) +
                           " elements of the given basis");
    }
  }
  if (targets.empty()) return {};
  std::vector<Rational> magnitudes;
  for (const auto& b : basis) magnitudes.push_back(abs(b));
  return round_to_integer_basis(higher_order_nonneg_basis(ElementSet(std::move(magnitudes)), k));
}

}  // namespace addbasis
