#pragma once

// Linear-algebra side of the rational-versus-integer comparison: rational
// vector families whose k-fold sums must hit every sum of k standard basis
// vectors, coordinate subspaces transversal to a given subspace, and the
// two-set covering probe.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "addbasis/error.hpp"
#include "addbasis/matrix.hpp"
#include "addbasis/random.hpp"
#include "addbasis/rational.hpp"

namespace addbasis {

/// k sets of rational n-vectors, B_0 ... B_{k-1}.
struct VectorFamily {
  std::size_t dimension = 0;                      // n
  std::size_t order = 2;                          // k
  std::vector<std::vector<RationalVector>> parts;  // B_0 ... B_{k-1}

  std::size_t total_size() const {
    std::size_t m = 0;
    for (const auto& p : parts) m += p.size();
    return m;
  }

  void validate() const {
    if (order < 2) throw InvalidInput("vector family order k must be at least 2");
    if (parts.size() != order) throw InvalidInput("vector family needs exactly k parts");
    for (const auto& part : parts)
      for (const auto& v : part)
        if (v.size() != dimension) throw InvalidInput("vector dimension does not match n");
  }
};

/// Span of the standard basis vectors e_i, i ∈ indices (0-based).
struct CoordinateSubspace {
  std::vector<std::size_t> indices;
};

/// floor((i_1 + ... + i_k) / k) with k the tuple length.
inline std::int64_t delta_offset(std::span<const std::size_t> tuple) {
  if (tuple.empty()) throw InvalidParameter("index tuple must be nonempty");
  const std::size_t sum = std::accumulate(tuple.begin(), tuple.end(), std::size_t{0});
  return static_cast<std::int64_t>(sum / tuple.size());
}

struct VectorWitness {
  std::vector<std::size_t> part_indices;  ///< i_1 <= ... <= i_k, sum ≡ 1 (mod k)
  std::vector<RationalVector> summands;   ///< b_j ∈ B_{i_j}
  std::int64_t delta = 0;
};

struct VectorCoverReport {
  bool covered = true;
  std::map<RationalVector, std::optional<VectorWitness>> witnesses;  ///< keyed by target
};

namespace detail {

inline void for_each_multiset(std::size_t alphabet, std::size_t length,
                              const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> tuple(length, 0);
  if (alphabet == 0) return;
  while (true) {
    visit(tuple);
    std::size_t pos = length;
    while (pos > 0 && tuple[pos - 1] == alphabet - 1) --pos;
    if (pos == 0) return;
    const std::size_t v = tuple[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < length; ++i) tuple[i] = v;
  }
}

inline RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RationalVector subtract(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace detail

/// Every sum of k standard basis vectors of Q^n (repetition allowed), in lexicographic index order.
inline std::vector<RationalVector> standard_k_sums(std::size_t n, std::size_t k) {
  std::vector<RationalVector> out;
  detail::for_each_multiset(n, k, [&](const std::vector<std::size_t>& idx) {
    RationalVector v(n);
    for (auto i : idx) v[i] += 1;
    out.push_back(std::move(v));
  });
  return out;
}

/// Decides whether kC ⊆ ∪ { B_{i_1} + ... + B_{i_k} + Δ_i·1 : i_1 + ... + i_k ≡ 1 (mod k) }.
inline VectorCoverReport check_vector_cover(const VectorFamily& family) {
  family.validate();
  const std::size_t n = family.dimension;
  const std::size_t k = family.order;

  std::vector<std::set<RationalVector>> lookup;
  for (const auto& part : family.parts) lookup.emplace_back(part.begin(), part.end());

  std::vector<std::vector<std::size_t>> index_tuples;
  detail::for_each_multiset(k, k, [&](const std::vector<std::size_t>& t) {
    const std::size_t sum = std::accumulate(t.begin(), t.end(), std::size_t{0});
    if (sum % k == 1 % k) index_tuples.push_back(t);
  });

  VectorCoverReport report;
  for (const auto& target : standard_k_sums(n, k)) {
    std::optional<VectorWitness> found;
    for (const auto& tuple : index_tuples) {
      const std::int64_t delta = delta_offset(tuple);
      RationalVector residual = target;
      for (auto& c : residual) c -= Rational(delta);
      std::vector<RationalVector> chosen;
      // Chooses b_1 ... b_{k-1} in order, then looks the last summand up.
      const std::function<bool(std::size_t, const RationalVector&)> pick = [&](std::size_t pos,
                                                                             const RationalVector& rest) {
        if (pos + 1 == k) {
          if (!lookup[tuple[pos]].contains(rest)) return false;
          chosen.push_back(rest);
          return true;
        }
        for (const auto& b : family.parts[tuple[pos]]) {
          chosen.push_back(b);
          if (pick(pos + 1, detail::subtract(rest, b))) return true;
          chosen.pop_back();
        }
        return false;
      };
      if (pick(0, residual)) {
        found = VectorWitness{tuple, chosen, delta};
        break;
      }
    }
    if (!found) report.covered = false;
    report.witnesses.emplace(target, std::move(found));
  }
  return report;
}

/// Coordinate subspace W with dim W = codim V and W ∩ V = {0}, where V = span(spanning).
///
/// V is cut out by the kernel of its spanning matrix; putting those equations
/// in reduced echelon form, the pivot coordinates index W.
inline CoordinateSubspace coord_subspace(const std::vector<RationalVector>& spanning, std::size_t dimension) {
  const RationalMatrix span_rows = RationalMatrix::from_rows(spanning, dimension);
  const std::vector<RationalVector> equations = kernel_basis(span_rows);
  const EchelonForm ef = row_echelon(RationalMatrix::from_rows(equations, dimension));
  return CoordinateSubspace{ef.pivots};
}

/// Integer solvability of 2x = M_i c for the three 1x2 systems M_1 c = c_1,
/// M_2 c = c_2, M_3 c = c_1 + c_2 (system index 0, 1, 2).
inline bool parity_system_solvable(std::size_t system, std::int64_t c1, std::int64_t c2) {
  static const RationalMatrix lhs{{Rational(2)}};
  const std::int64_t rhs_values[3] = {c1, c2, c1 + c2};
  if (system >= 3) throw InvalidParameter("system index must be 0, 1 or 2");
  const RationalVector b{Rational(rhs_values[system])};
  const auto x = solve_linear(lhs, b);
  return x && std::all_of(x->begin(), x->end(), [](const Rational& v) { return v.is_integer(); });
}

/// Over c ∈ {-4..4}^2: the union of the three systems is always solvable over Z,
/// while each system alone fails for some c.
inline bool parity_union_counterexample_check() {
  constexpr std::int64_t kBox = 4;
  for (std::int64_t c1 = -kBox; c1 <= kBox; ++c1) {
    for (std::int64_t c2 = -kBox; c2 <= kBox; ++c2) {
      bool any = false;
      for (std::size_t s = 0; s < 3; ++s) any = any || parity_system_solvable(s, c1, c2);
      if (!any) return false;
    }
  }
  for (std::size_t s = 0; s < 3; ++s) {
    bool fails_somewhere = false;
    for (std::int64_t c1 = -kBox; c1 <= kBox && !fails_somewhere; ++c1)
      for (std::int64_t c2 = -kBox; c2 <= kBox && !fails_somewhere; ++c2)
        fails_somewhere = !parity_system_solvable(s, c1, c2);
    if (!fails_somewhere) return false;
  }
  return true;
}

/// Scalars p/q with 1 <= q <= denominator_bound and |p/q| <= coordinate_bound.
struct GridSpec {
  std::int64_t coordinate_bound = 2;
  std::int64_t denominator_bound = 2;

  std::vector<Rational> values() const {
    if (coordinate_bound < 0 || denominator_bound < 1) throw InvalidParameter("grid bounds out of range");
    std::set<Rational> seen;
    for (std::int64_t q = 1; q <= denominator_bound; ++q)
      for (std::int64_t p = -coordinate_bound * q; p <= coordinate_bound * q; ++p) seen.insert(Rational::reduce(p, q));
    return {seen.begin(), seen.end()};
  }
};

struct TwoSetCoverReport {
  std::size_t dimension = 0;
  std::size_t size0 = 0;
  std::size_t size1 = 0;
  GridSpec grid;
  std::size_t grid_values = 0;
  std::optional<VectorFamily> family;  ///< a covering family, if one was found
  bool exhaustive = false;             ///< every anchor set in the grid was examined
  bool budget_exhausted = false;
  std::uint64_t anchors_examined = 0;
  std::uint64_t nodes = 0;
};

struct TwoSetCoverOptions {
  GridSpec grid;
  std::uint64_t budget = 20'000'000;  ///< search nodes
  std::uint64_t seed = 1;
};

namespace detail {

// Assigns each target to an anchor a, collecting target - a into the second
// set; fails once the second set would exceed `cap` distinct vectors.
class TwoSetAssignment {
 public:
  TwoSetAssignment(const std::vector<RationalVector>& targets, const std::vector<RationalVector>& anchors,
                   std::size_t cap, std::uint64_t& nodes, std::uint64_t budget)
      : targets_(targets), anchors_(anchors), cap_(cap), nodes_(nodes), budget_(budget) {}

  std::optional<std::vector<RationalVector>> solve() {
    if (assign(0)) {
      std::vector<RationalVector> out;
      for (const auto& [v, count] : used_) out.push_back(v);
      return out;
    }
    return std::nullopt;
  }

  bool out_of_budget() const { return exhausted_; }

 private:
  bool assign(std::size_t t) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (t == targets_.size()) return true;
    // Reusing an existing difference first keeps the second set small.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& a : anchors_) {
        RationalVector diff = subtract(targets_[t], a);
        const bool existing = used_.contains(diff);
        if ((pass == 0) != existing) continue;
        if (!existing && used_.size() >= cap_) continue;
        ++used_[diff];
        if (assign(t + 1)) return true;
        if (exhausted_) return false;
        if (--used_[diff] == 0) used_.erase(diff);
      }
    }
    return false;
  }

  const std::vector<RationalVector>& targets_;
  const std::vector<RationalVector>& anchors_;
  std::size_t cap_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  bool exhausted_ = false;
  std::map<RationalVector, std::size_t> used_;
};

inline RationalVector grid_vector(const std::vector<Rational>& values, std::uint64_t index, std::size_t n) {
  RationalVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = values[index % values.size()];
    index /= values.size();
  }
  return v;
}

}  // namespace detail

/// Searches for B_0, B_1 ⊂ Q^n with |B_0| = size0, |B_1| <= size1 and
/// B_0 + B_1 ⊇ { e_i + e_j : i <= j }.
///
/// The smaller side is searched up to translation: one member is pinned to
/// the origin and the others range over the grid^n; the larger side is then
/// forced, one difference per target, so it is not restricted to the grid.
/// Anchor sets are enumerated exhaustively when the budget allows, otherwise
/// sampled with the given seed.
inline TwoSetCoverReport two_set_cover_probe(std::size_t n, std::size_t size0, std::size_t size1,
                                           const TwoSetCoverOptions& options = {}) {
  if (n < 2) throw InvalidParameter("dimension must be at least 2");
  TwoSetCoverReport report;
  report.dimension = n;
  report.size0 = size0;
  report.size1 = size1;
  report.grid = options.grid;
  const std::vector<Rational> values = options.grid.values();
  report.grid_values = values.size();

  const std::vector<RationalVector> targets = standard_k_sums(n, 2);
  const bool swapped = size0 > size1;
  const std::size_t small = swapped ? size1 : size0;
  const std::size_t large = swapped ? size0 : size1;

  // |B_0 + B_1| <= |B_0| |B_1| settles small cases without search.
  if (small == 0 || small * large < targets.size()) {
    report.exhaustive = true;
    return report;
  }

  Integer cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= values.size();
  const Integer nonzero_cells = cells - 1;
  if (nonzero_cells > std::numeric_limits<std::uint64_t>::max() / 2)
    throw InvalidParameter("grid too large to index");
  const auto cell_count = static_cast<std::uint64_t>(nonzero_cells);
  const std::uint64_t origin = [&] {
    // Index of the zero vector in mixed-radix order.
    const auto zero_pos = static_cast<std::uint64_t>(
        std::lower_bound(values.begin(), values.end(), Rational()) - values.begin());
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * values.size() + zero_pos;
    return idx;
  }();
  auto nonzero_vector = [&](std::uint64_t i) {
    return detail::grid_vector(values, i >= origin ? i + 1 : i, n);
  };

  auto try_anchors = [&](const std::vector<std::uint64_t>& picks) -> bool {
    ++report.anchors_examined;
    std::vector<RationalVector> anchors{RationalVector(n)};
    for (auto p : picks) anchors.push_back(nonzero_vector(p));
    detail::TwoSetAssignment assignment(targets, anchors, large, report.nodes, options.budget);
    auto other = assignment.solve();
    if (assignment.out_of_budget()) report.budget_exhausted = true;
    if (!other) return false;
    VectorFamily family;
    family.dimension = n;
    family.order = 2;
    family.parts = swapped ? std::vector<std::vector<RationalVector>>{*other, anchors}
                           : std::vector<std::vector<RationalVector>>{anchors, *other};
    report.family = std::move(family);
    return true;
  };

  const std::size_t free_picks = small - 1;
  Integer combinations = 1;
  for (std::size_t i = 0; i < free_picks; ++i) combinations = combinations * (cell_count - i) / (i + 1);
  if (free_picks > cell_count) {
    report.exhaustive = true;
    return report;
  }

  const bool enumerate = combinations <= Integer(options.budget);
  if (enumerate) {
    std::vector<std::uint64_t> picks(free_picks);
    std::iota(picks.begin(), picks.end(), 0);
    while (true) {
      if (try_anchors(picks)) return report;
      if (report.budget_exhausted) return report;
      // Next combination in lexicographic order.
      std::size_t pos = free_picks;
      while (pos > 0 && picks[pos - 1] == cell_count - free_picks + pos - 1) --pos;
      if (pos == 0) break;
      ++picks[pos - 1];
      for (std::size_t i = pos; i < free_picks; ++i) picks[i] = picks[i - 1] + 1;
    }
    report.exhaustive = true;
    return report;
  }

  std::mt19937_64 rng(options.seed);
  while (report.nodes < options.budget) {
    std::set<std::uint64_t> chosen;
    while (chosen.size() < free_picks) chosen.insert(uniform_below(rng, cell_count));
    if (try_anchors({chosen.begin(), chosen.end()})) return report;
    if (report.budget_exhausted) break;
  }
  report.budget_exhausted = true;
  return report;
}

}  // namespace addbasis
