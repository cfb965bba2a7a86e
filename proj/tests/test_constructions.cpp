#include <gtest/gtest.h>

#include <random>

#include "addbasis/bounds.hpp"
#include "addbasis/constructions.hpp"
#include "addbasis/instances.hpp"
#include "oracles.hpp"

using addbasis::ElementSet;
using addbasis::Rational;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational::reduce(p, d); }

/// Every element of k(B ∪ -B) that is >= 0, by ordered-tuple enumeration.
std::vector<oracle::Q> signed_targets(const ElementSet& b, std::size_t k) {
  std::vector<oracle::Q> closed;
  for (const auto& x : b) {
    closed.push_back(oracle::to_q(x));
    closed.push_back(-oracle::to_q(x));
  }
  std::vector<oracle::Q> out;
  for (const auto& s : oracle::all_k_sums(closed, k))
    if (s >= 0) out.push_back(s);
  return out;
}

void expect_covers(const ElementSet& x, const std::vector<oracle::Q>& targets, std::size_t k) {
  for (const auto& t : targets) {
    const auto cert = addbasis::k_sum_membership(oracle::from_q(t), x, k);
    ASSERT_TRUE(cert) << "target " << t << " not in " << k << "X, X=" << x;
    ASSERT_TRUE(cert->validates(x, k));
  }
}

/// Strictly increasing rationals in [0, 1] ending at 1.
std::vector<Rational> random_unit_points(std::mt19937_64& rng, std::size_t n, std::int64_t den) {
  std::set<Rational> s{Rational(1)};
  while (s.size() < n) {
    const std::int64_t d = std::uniform_int_distribution<std::int64_t>(1, den)(rng);
    const std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng);
    s.insert(Rational::reduce(p, d));
  }
  return {s.begin(), s.end()};
}

}  // namespace

TEST(Rounding, Examples) {
  EXPECT_EQ(addbasis::round_to_integer_basis(ElementSet{q(1, 2)}), (ElementSet{0, 1}));
  EXPECT_EQ(addbasis::round_to_integer_basis(ElementSet{q(1, 3), q(2, 3)}), (ElementSet{0, 1}));
  EXPECT_EQ(addbasis::round_to_integer_basis(ElementSet{2, 5}), (ElementSet{2, 5}));
  const ElementSet thirds{q(1, 3), q(2, 3)};
  EXPECT_EQ(addbasis::k_fold_sumset(thirds, 3), (ElementSet{1, q(4, 3), q(5, 3), 2}));
  EXPECT_TRUE(addbasis::is_k_basis(ElementSet{0, 1}, ElementSet{1, 2}, 3).covered);
}

TEST(Rounding, CoversIntegerSumsOfRandomBases) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 150; ++iter) {
    const ElementSet b = oracle::random_set(rng, 6, 50, 4);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const ElementSet c = addbasis::round_to_integer_basis(b);
    ASSERT_LE(c.size(), 2 * b.size());
    ASSERT_TRUE(c.all_integers());
    std::vector<oracle::Q> integral;
    for (const auto& s : oracle::all_k_sums(oracle::to_q(b), k))
      if (boost::multiprecision::denominator(s) == 1) integral.push_back(s);
    ASSERT_TRUE(oracle::covers(oracle::to_q(c), integral, k)) << "B=" << b;
  }
}

TEST(Dyadic, Examples) {
  const ElementSet b{-8, -4, -2, -1, 1, 2, 4, 8};
  const ElementSet plus = addbasis::dyadic_two_basis(b);
  EXPECT_TRUE(plus.contains(q(7)));
  EXPECT_TRUE(plus.contains(q(0)));
  const auto report = addbasis::is_k_basis(plus, addbasis::k_fold_sumset(b, 2).non_negative_part(), 2);
  EXPECT_TRUE(report.covered);

  EXPECT_EQ(addbasis::dyadic_two_basis(ElementSet{3}), (ElementSet{0, 3}));
  EXPECT_TRUE(addbasis::is_k_basis(ElementSet{0, 3}, ElementSet{6}, 2).covered);
  EXPECT_EQ(addbasis::dyadic_two_basis(ElementSet{-1, -2}), (ElementSet{0, 1}));
  EXPECT_THROW(addbasis::dyadic_two_basis(ElementSet{}), addbasis::InvalidInput);
  EXPECT_THROW(addbasis::dyadic_two_basis(ElementSet{q(1, 2)}), addbasis::InvalidInput);
}

TEST(Dyadic, CoversAndRespectsSizeBound) {
  for (std::size_t n : {2u, 3u, 5u, 8u, 13u, 32u}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const ElementSet b = addbasis::gen_random_signed_integer_basis(n, 6 * n, seed).values;
      const ElementSet plus = addbasis::dyadic_two_basis(b);
      ASSERT_TRUE(plus.all_integers() && plus.all_non_negative());
      ASSERT_LE(plus.size(), addbasis::bounds::dyadic_level_count_bound(n));
      ASSERT_TRUE(addbasis::bounds::within_dyadic_bound(plus.size(), n));
      std::vector<oracle::Q> targets;
      for (const auto& s : oracle::all_k_sums(oracle::to_q(b), 2))
        if (s >= 0) targets.push_back(s);
      ASSERT_TRUE(oracle::covers(oracle::to_q(plus), targets, 2)) << "B=" << b;
    }
  }
}

TEST(Bounds, ExactComparisons) {
  // 3n + 2n log2 n at n = 4 is exactly 28.
  EXPECT_TRUE(addbasis::bounds::within_dyadic_bound(28, 4));
  EXPECT_FALSE(addbasis::bounds::within_dyadic_bound(29, 4));
  // 2 n^3 k log2 k at n = 1, k = 2 is exactly 4.
  EXPECT_TRUE(addbasis::bounds::within_higher_order_bound(4, 1, 2));
  EXPECT_FALSE(addbasis::bounds::within_higher_order_bound(5, 1, 2));
  EXPECT_EQ(addbasis::bounds::floor_log2(1), 0u);
  EXPECT_EQ(addbasis::bounds::floor_log2(8), 3u);
  EXPECT_EQ(addbasis::bounds::floor_log2(9), 3u);
  EXPECT_EQ(addbasis::bounds::dyadic_level_cap(2, q(1)), 3u);  // 2^3 >= 6
  EXPECT_EQ(addbasis::bounds::dyadic_level_cap(2, q(3, 4)), 3u);
  EXPECT_EQ(addbasis::bounds::dyadic_level_cap(2, q(1, 2)), 4u);
}

TEST(ApApproximation, Examples) {
  const std::vector<Rational> trivial{q(0), q(1)};
  const auto a = addbasis::find_ap_approximation(trivial, 3);
  EXPECT_EQ(a.step, q(1));
  EXPECT_EQ(a.multiples, (std::vector<addbasis::Integer>{0, 1}));
  EXPECT_EQ(a.remainders, (std::vector<Rational>{0, 0}));

  const std::vector<Rational> half{q(1, 2), q(1)};
  const auto b = addbasis::find_ap_approximation(half, 4);
  EXPECT_EQ(b.step, q(1, 2));
  EXPECT_EQ(b.multiples, (std::vector<addbasis::Integer>{1, 2}));
  EXPECT_EQ(b.remainders, (std::vector<Rational>{0, 0}));

  const std::vector<Rational> third{q(1, 3), q(1)};
  const auto c = addbasis::find_ap_approximation(third, 6);
  EXPECT_TRUE(c.satisfies_invariants(third));
  EXPECT_EQ(c.remainders.front(), c.remainders.back());
  EXPECT_LE(addbasis::small_scale_reduction(c).size(), 1u);
}

TEST(ApApproximation, RejectsBadInput) {
  const std::vector<Rational> one{q(1)};
  EXPECT_THROW(addbasis::find_ap_approximation(one, 3), addbasis::InvalidInput);
  const std::vector<Rational> not_unit{q(0), q(2)};
  EXPECT_THROW(addbasis::find_ap_approximation(not_unit, 3), addbasis::InvalidInput);
  const std::vector<Rational> too_high{q(9, 10), q(1)};
  EXPECT_THROW(addbasis::find_ap_approximation(too_high, 3), addbasis::InvalidInput);
  const std::vector<Rational> unsorted{q(1, 2), q(1, 3), q(1)};
  EXPECT_THROW(addbasis::find_ap_approximation(unsorted, 3), addbasis::InvalidInput);
  const std::vector<Rational> ok{q(0), q(1)};
  EXPECT_THROW(addbasis::find_ap_approximation(ok, 1), addbasis::InvalidInput);
}

TEST(ApApproximation, InvariantsOnRandomInputs) {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    const unsigned c = std::uniform_int_distribution<unsigned>(2, 9)(rng);
    auto x = random_unit_points(rng, n, 40);
    if (x.front() > 1 - Rational(c).inverse()) continue;
    const auto d = addbasis::find_ap_approximation(x, c);
    ASSERT_TRUE(d.satisfies_invariants(x));
    // Independent recheck of each property.
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(oracle::to_q(Rational(d.multiples[i]) * d.step + d.remainders[i]), oracle::to_q(x[i]));
      ASSERT_LE(oracle::to_q(addbasis::abs(d.remainders[i])) * c, oracle::to_q(d.step));
    }
    oracle::Q floor_step = 1;
    for (std::size_t i = 0; i <= n; ++i) floor_step /= c;
    ASSERT_GE(oracle::to_q(d.step), floor_step);
    ASSERT_LT(addbasis::small_scale_reduction(d).size(), n);
  }
}

TEST(SmallScale, Examples) {
  addbasis::ApDecomposition zero;
  zero.step = 1;
  zero.remainders = {q(0), q(0)};
  EXPECT_EQ(addbasis::small_scale_reduction(zero), ElementSet{0});
  addbasis::ApDecomposition mixed;
  mixed.step = 1;
  mixed.remainders = {q(1, 24), q(-1, 24), q(0)};
  EXPECT_EQ(addbasis::small_scale_reduction(mixed), (ElementSet{0, q(1, 24)}));
}

TEST(LargeScale, Examples) {
  const std::vector<Rational> single{q(1)};
  const auto spec = addbasis::large_scale_levels(single, q(1), 2);
  EXPECT_EQ(spec.max_level, 3u);
  EXPECT_EQ(spec.levels.size(), 4u);
  const ElementSet x1 = spec.combined();
  EXPECT_TRUE(addbasis::k_sum_membership(q(2), x1, 2));

  const std::vector<Rational> pair{q(1, 2), q(1)};
  const ElementSet x2 = addbasis::large_scale_cover(pair, q(1), 2);
  EXPECT_GE(x2.min(), 0);
  for (const auto& t : {q(1), q(3, 2), q(2)}) EXPECT_TRUE(addbasis::k_sum_membership(t, x2, 2)) << t;

  EXPECT_THROW(addbasis::large_scale_cover(pair, q(0), 2), addbasis::InvalidInput);
  EXPECT_THROW(addbasis::large_scale_cover(pair, q(3, 2), 2), addbasis::InvalidInput);
  EXPECT_THROW(addbasis::large_scale_cover(pair, q(1), 1), addbasis::InvalidInput);
}

TEST(ScaleSeparation, SmallAndLargeSumsAreCovered) {
  std::mt19937_64 rng(44);
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const unsigned c = static_cast<unsigned>(3 * k);
    auto x = random_unit_points(rng, n, 12);
    if (x.front() > 1 - Rational(c).inverse()) continue;
    const auto d = addbasis::find_ap_approximation(x, c);
    const ElementSet b(x);
    const ElementSet reduced = addbasis::small_scale_reduction(d);
    const ElementSet large = addbasis::large_scale_cover(x, d.step, k);
    ASSERT_LE(large.size(), addbasis::bounds::large_scale_size_bound(n, k, d.step));
    const auto reduced_sums = addbasis::k_fold_sumset(addbasis::signed_closure(reduced), k);
    for (const auto& t : addbasis::k_fold_sumset(addbasis::signed_closure(b), k)) {
      if (addbasis::abs(t) * 2 < d.step) {
        ASSERT_TRUE(reduced_sums.contains(t)) << "small sum " << t;
      } else if (t.sign() >= 0) {
        ASSERT_TRUE(addbasis::k_sum_membership(t, large, k)) << "large sum " << t;
      }
    }
  }
}

TEST(HigherOrder, Examples) {
  EXPECT_EQ(addbasis::higher_order_nonneg_basis(ElementSet{1}, 3), (ElementSet{0, 1}));
  EXPECT_EQ(addbasis::higher_order_nonneg_basis(ElementSet{0}, 2), ElementSet{0});
  const ElementSet b{q(1, 2), q(1)};
  const ElementSet x = addbasis::higher_order_nonneg_basis(b, 2);
  for (const auto& t : {q(0), q(1, 2), q(1), q(3, 2), q(2)}) EXPECT_TRUE(addbasis::k_sum_membership(t, x, 2)) << t;
  expect_covers(x, signed_targets(b, 2), 2);
  EXPECT_THROW(addbasis::higher_order_nonneg_basis(ElementSet{-1}, 2), addbasis::InvalidInput);
  EXPECT_THROW(addbasis::higher_order_nonneg_basis(ElementSet{1}, 1), addbasis::InvalidInput);
}

TEST(HigherOrder, CoversSignedSumsOfRandomInputs) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 2; k <= 3; ++k) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const ElementSet b = addbasis::gen_random_rational_basis(n, 6, 3, seed * 97 + n, true).values;
        const auto traced = addbasis::higher_order_nonneg_basis_traced(b, k);
        ASSERT_TRUE(traced.basis.all_non_negative());
        expect_covers(traced.basis, signed_targets(b, k), k);
      }
    }
  }
}

TEST(HigherOrder, NearTopCaseIsExercised) {
  // All points within 1/C of the maximum: the step-1 branch runs first.
  const ElementSet b{q(17, 18), q(1)};
  const auto traced = addbasis::higher_order_nonneg_basis_traced(b, 2);
  ASSERT_FALSE(traced.stages.empty());
  EXPECT_TRUE(traced.stages.front().near_top);
  expect_covers(traced.basis, signed_targets(b, 2), 2);
}

TEST(HigherOrder, CoversRepeatedTopSums) {
  // Sums that use the maximum several times.
  const ElementSet b{q(1, 7), q(2, 5), q(1)};
  for (std::size_t k = 2; k <= 4; ++k) expect_covers(addbasis::higher_order_nonneg_basis(b, k), signed_targets(b, k), k);
}

TEST(HigherOrder, ScaleEquivariant) {
  std::mt19937_64 rng(45);
  for (int iter = 0; iter < 20; ++iter) {
    const ElementSet b = addbasis::gen_random_rational_basis(3, 5, 4, iter, true).values;
    const Rational c = Rational::reduce(std::uniform_int_distribution<std::int64_t>(1, 30)(rng),
                                        std::uniform_int_distribution<std::int64_t>(1, 30)(rng));
    const std::size_t k = 2 + iter % 2;
    ASSERT_EQ(addbasis::higher_order_nonneg_basis(b.scaled(c), k), addbasis::higher_order_nonneg_basis(b, k).scaled(c));
  }
}

TEST(NaturalBasis, Examples) {
  const ElementSet x = addbasis::natural_k_basis(ElementSet{2}, ElementSet{1}, 2);
  EXPECT_TRUE(ElementSet({0, 1}).is_subset_of(x));
  EXPECT_TRUE(addbasis::k_sum_membership(q(2), x, 2));

  const ElementSet c{-16, -4, 4, 16};
  const ElementSet a = addbasis::k_fold_sumset(c, 2).non_negative_part();
  EXPECT_EQ(a, (ElementSet{0, 8, 12, 20, 32}));
  const ElementSet y = addbasis::natural_k_basis(a, c, 2);
  EXPECT_TRUE(y.all_integers() && y.all_non_negative());
  EXPECT_TRUE(addbasis::is_k_basis(y, a, 2).covered);

  try {
    (void)addbasis::natural_k_basis(ElementSet{3}, ElementSet{1}, 2);
    FAIL() << "expected InvalidWitness";
  } catch (const addbasis::InvalidWitness& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(NaturalBasis, CoversRandomSignedInstances) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 2; k <= 3; ++k) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const ElementSet b = addbasis::gen_random_signed_integer_basis(n, 5 * n, seed).values;
        const ElementSet a = addbasis::k_fold_sumset(b, k).non_negative_part();
        if (a.empty()) continue;
        const ElementSet x = addbasis::natural_k_basis(a, b, k);
        ASSERT_TRUE(x.all_integers() && x.all_non_negative());
        ASSERT_TRUE(oracle::covers_layered(oracle::to_q(x), oracle::to_q(a), k)) << "B=" << b << " k=" << k;
      }
    }
  }
}
