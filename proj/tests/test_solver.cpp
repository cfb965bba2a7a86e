#include <gtest/gtest.h>

#include <random>

#include "addbasis/solver.hpp"
#include "oracles.hpp"

using addbasis::BasisInstance;
using addbasis::Domain;
using addbasis::ElementSet;
using addbasis::Exactness;
using addbasis::GroundSet;
using addbasis::Rational;

namespace {

ElementSet range(std::int64_t lo, std::int64_t hi) {
  std::vector<Rational> v;
  for (std::int64_t i = lo; i <= hi; ++i) v.emplace_back(i);
  return ElementSet(std::move(v));
}

ElementSet random_naturals(std::mt19937_64& rng, std::size_t max_size, std::int64_t max_value) {
  const std::size_t size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < size; ++i) v.emplace_back(std::uniform_int_distribution<std::int64_t>(0, max_value)(rng));
  return ElementSet(std::move(v));
}

}  // namespace

TEST(GroundSet, Defaults) {
  const auto n = addbasis::default_ground_set({ElementSet{0, 8, 12, 20, 32}, 2, Domain::NaturalNumbers});
  EXPECT_EQ(n.elements, range(0, 32));
  EXPECT_EQ(n.exactness, Exactness::ProvenSufficient);
  const auto five = addbasis::default_ground_set({ElementSet{5}, 3, Domain::NaturalNumbers});
  EXPECT_EQ(five.elements, range(0, 5));
  const auto z = addbasis::default_ground_set({ElementSet{4}, 2, Domain::Integers});
  EXPECT_EQ(z.elements, range(-8, 8));
  EXPECT_EQ(z.exactness, Exactness::HeuristicWindow);
  addbasis::GroundOptions wide;
  wide.window_multiplier = 3;
  EXPECT_EQ(addbasis::default_ground_set({ElementSet{-2, 1}, 2, Domain::Integers}, wide).elements, range(-6, 6));

  const auto qd = addbasis::default_ground_set({ElementSet{Rational::reduce(1, 2)}, 2, Domain::ScaledRationals});
  EXPECT_EQ(qd.elements.size(), 5u);  // {-1, -1/2, 0, 1/2, 1}
  EXPECT_EQ(qd.elements.min(), Rational(-1));
  EXPECT_EQ(qd.exactness, Exactness::HeuristicWindow);
}

TEST(GroundSet, RejectsBadInstances) {
  EXPECT_THROW(addbasis::default_ground_set({ElementSet{}, 2, Domain::NaturalNumbers}), addbasis::InvalidInstance);
  EXPECT_THROW(addbasis::default_ground_set({ElementSet{-1}, 2, Domain::NaturalNumbers}), addbasis::InvalidInstance);
  EXPECT_THROW(addbasis::default_ground_set({ElementSet{Rational::reduce(1, 2)}, 2, Domain::Integers}),
               addbasis::InvalidInstance);
  addbasis::GroundOptions bad_scale;
  bad_scale.scale = addbasis::Integer(3);
  EXPECT_THROW(
      addbasis::default_ground_set({ElementSet{Rational::reduce(1, 2)}, 2, Domain::ScaledRationals}, bad_scale),
      addbasis::InvalidParameter);
}

TEST(Solver, SpecExamples) {
  const BasisInstance small{ElementSet{0, 1, 2}, 2, Domain::NaturalNumbers};
  const auto r = addbasis::min_basis(small, GroundSet{range(0, 2), Exactness::ProvenSufficient});
  EXPECT_EQ(r.optimal_size, 2u);
  EXPECT_EQ(r.witness, (ElementSet{0, 1}));
  EXPECT_TRUE(r.exact);

  const auto zero = addbasis::ell_over_domain(ElementSet{0}, 2, Domain::NaturalNumbers);
  EXPECT_EQ(zero.optimal_size, 1u);
  EXPECT_EQ(zero.witness, ElementSet{0});

  const auto power = addbasis::ell_over_domain(ElementSet{0, 8, 12, 20, 32}, 2, Domain::NaturalNumbers);
  EXPECT_EQ(power.optimal_size, 4u);
  EXPECT_TRUE(power.exact);
  EXPECT_TRUE(addbasis::is_k_basis(power.witness, ElementSet{0, 8, 12, 20, 32}, 2).covered);
  EXPECT_EQ(power.certificates.size(), 5u);

  const auto one = addbasis::ell_over_domain(ElementSet{1}, 2, Domain::Integers);
  EXPECT_EQ(one.optimal_size, 2u);
  EXPECT_FALSE(one.exact);
  const auto two = addbasis::ell_over_domain(ElementSet{2}, 2, Domain::Integers);
  EXPECT_EQ(two.optimal_size, 1u);
  EXPECT_EQ(two.witness, ElementSet{1});
}

TEST(Solver, PowerFamilyLowerBoundByExhaustion) {
  // No 3-subset of {0..32} is a 2-basis of {0, 8, 12, 20, 32}.
  const std::vector<oracle::Q> targets{0, 8, 12, 20, 32};
  for (int a = 0; a <= 32; ++a)
    for (int b = a; b <= 32; ++b)
      for (int c = b; c <= 32; ++c)
        ASSERT_FALSE(oracle::covers({oracle::Q(a), oracle::Q(b), oracle::Q(c)}, targets, 2));
}

TEST(Solver, OptimalSizeMatchesNaiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const std::int64_t top = std::uniform_int_distribution<std::int64_t>(3, 17)(rng);
    const ElementSet a = random_naturals(rng, 6, top);
    const auto result = addbasis::ell_over_domain(a, k, Domain::NaturalNumbers);
    const ElementSet ground = range(0, a.max().numerator().convert_to<std::int64_t>());
    const int expected = oracle::naive_min_basis(oracle::to_q(ground), oracle::to_q(a), k);
    ASSERT_EQ(static_cast<int>(result.optimal_size), expected) << "A=" << a << " k=" << k;
    ASSERT_TRUE(addbasis::is_k_basis(result.witness, a, k).covered);
    ASSERT_TRUE(result.witness.is_subset_of(ground));
  }
}

TEST(Solver, OptimalOverIntegerWindowMatchesNaive) {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 60; ++iter) {
    const ElementSet a = random_naturals(rng, 4, 4);
    addbasis::GroundOptions opt;
    opt.window_multiplier = 2;
    const auto result = addbasis::ell_over_domain(a, 2, Domain::Integers, opt);
    const auto ground = addbasis::default_ground_set({a, 2, Domain::Integers}, opt);
    ASSERT_LE(ground.elements.size(), 18u);
    ASSERT_EQ(static_cast<int>(result.optimal_size),
              oracle::naive_min_basis(oracle::to_q(ground.elements), oracle::to_q(a), 2));
  }
}

TEST(Solver, WitnessIsLexicographicallySmallest) {
  std::mt19937_64 rng(33);
  for (int iter = 0; iter < 40; ++iter) {
    const ElementSet a = random_naturals(rng, 4, 9);
    const auto result = addbasis::ell_over_domain(a, 2, Domain::NaturalNumbers);
    // Scan all subsets of the optimal size in lexicographic order; the first that covers must be the witness.
    const std::int64_t top = a.max().numerator().convert_to<std::int64_t>();
    std::vector<std::int64_t> pick(result.optimal_size);
    std::function<bool(std::size_t, std::int64_t)> scan = [&](std::size_t pos, std::int64_t from) {
      if (pos == pick.size()) {
        std::vector<oracle::Q> b(pick.begin(), pick.end());
        return oracle::covers(b, oracle::to_q(a), 2);
      }
      for (std::int64_t v = from; v <= top; ++v) {
        pick[pos] = v;
        if (scan(pos + 1, v + 1)) return true;
      }
      return false;
    };
    ASSERT_TRUE(scan(0, 0));
    std::vector<Rational> expected(pick.begin(), pick.end());
    ASSERT_EQ(result.witness, ElementSet(expected)) << "A=" << a;
  }
}

TEST(Solver, MonotoneInTargets) {
  std::mt19937_64 rng(34);
  for (int iter = 0; iter < 40; ++iter) {
    const ElementSet a = random_naturals(rng, 6, 20);
    std::vector<Rational> sub;
    for (const auto& x : a)
      if (rng() % 2) sub.push_back(x);
    if (sub.empty()) sub.push_back(a.max());
    const ElementSet a_sub(sub);
    const GroundSet ground{range(0, 20), Exactness::ProvenSufficient};
    const auto full = addbasis::min_basis({a, 2, Domain::NaturalNumbers}, ground);
    const auto part = addbasis::min_basis({a_sub, 2, Domain::NaturalNumbers}, ground);
    ASSERT_LE(part.optimal_size, full.optimal_size);
  }
}

TEST(Solver, TranslationInvariantOverIntegerWindows) {
  std::mt19937_64 rng(35);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const ElementSet a = random_naturals(rng, 5, 10);
    const Rational c(std::uniform_int_distribution<std::int64_t>(-7, 7)(rng));
    const GroundSet window{range(-10, 10), Exactness::HeuristicWindow};
    const GroundSet shifted{window.elements.translated(c), Exactness::HeuristicWindow};
    const auto base = addbasis::min_basis({a, k, Domain::Integers}, window);
    const auto moved = addbasis::min_basis({a.translated(c * Rational(k)), k, Domain::Integers}, shifted);
    ASSERT_EQ(base.optimal_size, moved.optimal_size);
    ASSERT_EQ(moved.witness, base.witness.translated(c));
  }
}

TEST(Solver, DeterministicAcrossRuns) {
  const ElementSet a{0, 3, 7, 11, 19, 23};
  const auto first = addbasis::ell_over_domain(a, 2, Domain::NaturalNumbers);
  for (int i = 0; i < 3; ++i) {
    const auto again = addbasis::ell_over_domain(a, 2, Domain::NaturalNumbers);
    EXPECT_EQ(again.witness, first.witness);
    EXPECT_EQ(again.nodes_explored, first.nodes_explored);
  }
}

TEST(Solver, ScaledRationals) {
  const ElementSet a{Rational::reduce(1, 2), Rational(1)};
  const auto r = addbasis::ell_over_domain(a, 2, Domain::ScaledRationals);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.optimal_size, 2u);  // 2b = 1/2 needs b = 1/4, off the half-integer grid
  EXPECT_TRUE(addbasis::is_k_basis(r.witness, a, 2).covered);
  addbasis::GroundOptions fine;
  fine.scale = addbasis::Integer(4);
  const auto f = addbasis::ell_over_domain(a, 2, Domain::ScaledRationals, fine);
  EXPECT_EQ(f.optimal_size, 2u);  // one element cannot double to both 1/2 and 1
}

TEST(Solver, BudgetExhaustionCarriesBounds) {
  const ElementSet a{0, 8, 12, 20, 32};
  try {
    (void)addbasis::ell_over_domain(a, 2, Domain::NaturalNumbers, {}, 5);
    FAIL() << "expected ResourceLimit";
  } catch (const addbasis::ResourceLimit& e) {
    EXPECT_GE(e.best_upper_bound(), 4u);
    EXPECT_LE(e.proven_lower_bound(), 4u);
  }
}

TEST(Solver, UnreachableTargetIsReported) {
  const BasisInstance instance{ElementSet{5}, 2, Domain::NaturalNumbers};
  EXPECT_THROW(addbasis::min_basis(instance, GroundSet{ElementSet{0, 1}, Exactness::HeuristicWindow}),
               addbasis::InvalidInstance);
}
