#pragma once

// Exact minimum k-basis search over a finite ground set.
//
// Iterative deepening on the basis size; at each size a depth-first search
// enumerates subsets of the ground set in increasing index order, so the
// first covering subset found is the lexicographically smallest one of that
// size.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/rational.hpp"
#include "addbasis/sumset.hpp"

namespace addbasis {

enum class Domain { NaturalNumbers, Integers, ScaledRationals };

enum class Exactness { ProvenSufficient, HeuristicWindow };

inline std::string to_string(Domain d) {
  switch (d) {
    case Domain::NaturalNumbers: return "N";
    case Domain::Integers: return "Z";
    case Domain::ScaledRationals: return "Q";
  }
  return "?";
}

inline Domain parse_domain(const std::string& s) {
  if (s == "N" || s == "naturals" || s == "NaturalNumbers") return Domain::NaturalNumbers;
  if (s == "Z" || s == "integers" || s == "Integers") return Domain::Integers;
  if (s == "Q" || s == "rationals" || s == "ScaledRationals") return Domain::ScaledRationals;
  throw ParseError("unknown domain '" + s + "' (expected N, Z or Q)");
}

inline std::string to_string(Exactness e) {
  return e == Exactness::ProvenSufficient ? "ProvenSufficient" : "HeuristicWindow";
}

struct BasisInstance {
  ElementSet targets;  ///< A
  std::size_t k = 2;
  Domain domain = Domain::NaturalNumbers;

  void validate() const {
    if (k == 0) throw InvalidInstance("k must be at least 1");
    if (targets.empty()) throw InvalidInstance("target set A is empty");
    if (domain == Domain::NaturalNumbers && !(targets.all_integers() && targets.all_non_negative()))
      throw InvalidInstance("domain N requires non-negative integer targets");
    if (domain == Domain::Integers && !targets.all_integers())
      throw InvalidInstance("domain Z requires integer targets");
  }
};

struct GroundSet {
  ElementSet elements;
  Exactness exactness = Exactness::HeuristicWindow;
};

struct GroundOptions {
  /// Integer and rational windows are [-W, W] with W = multiplier * max|A| (after scaling).
  unsigned window_multiplier = 2;
  /// Common denominator for ScaledRationals; defaults to the lcm of A's denominators.
  std::optional<Integer> scale;
};

struct SolveResult {
  std::size_t optimal_size = 0;
  ElementSet witness;
  std::map<Rational, SumCertificate> certificates;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

inline Integer lcm_of_denominators(const ElementSet& s) {
  Integer l = 1;
  for (const auto& x : s) l = boost::multiprecision::lcm(l, x.denominator());
  return l;
}

inline ElementSet integer_window(const Integer& lo, const Integer& hi, const Rational& unit) {
  std::vector<Rational> out;
  for (Integer j = lo; j <= hi; ++j) out.push_back(Rational(j) * unit);
  return ElementSet::from_sorted_unique(std::move(out));
}

}  // namespace detail

/// Candidate pool for the exact search.
///
/// Over N every part of a sum of non-negative numbers is at most the sum, so
/// {0, ..., max A} provably contains an optimal basis. Over Z and Q no such
/// bound is available and a symmetric window is returned instead.
inline GroundSet default_ground_set(const BasisInstance& instance, const GroundOptions& options = {}) {
  instance.validate();
  const Rational& top = instance.targets.max();
  switch (instance.domain) {
    case Domain::NaturalNumbers:
      return {detail::integer_window(0, top.numerator(), 1), Exactness::ProvenSufficient};
    case Domain::Integers: {
      const Integer bound = std::max(abs(instance.targets.min()), abs(top)).numerator();
      const Integer w = bound * options.window_multiplier;
      return {detail::integer_window(-w, w, 1), Exactness::HeuristicWindow};
    }
    case Domain::ScaledRationals: {
      const Integer scale = options.scale.value_or(detail::lcm_of_denominators(instance.targets));
      if (scale <= 0) throw InvalidParameter("scale must be positive");
      const Rational scaled_bound = std::max(abs(instance.targets.min()), abs(top)) * Rational(scale);
      if (!scaled_bound.is_integer()) throw InvalidParameter("scale does not clear the denominators of A");
      const Integer w = scaled_bound.numerator() * options.window_multiplier;
      return {detail::integer_window(-w, w, Rational::reduce(Integer(1), scale)), Exactness::HeuristicWindow};
    }
  }
  throw InvalidInstance("unknown domain");
}

namespace detail {

using Representation = std::vector<std::uint32_t>;  // distinct ground indices, increasing

// Smallest s with C(s + k - 1, k) >= m: fewer elements have too few k-multisets.
inline std::size_t multiset_counting_bound(std::size_t m, std::size_t k) {
  if (m == 0) return 0;
  for (std::size_t s = 1;; ++s) {
    Integer count = 1;
    for (std::size_t i = 0; i < k; ++i) count = count * (s + i) / (i + 1);
    if (count >= m) return s;
  }
}

class MinBasisSearch {
 public:
  MinBasisSearch(const ElementSet& targets, const ElementSet& ground, std::size_t k, std::uint64_t budget)
      : ground_(ground), k_(k), budget_(budget) {
    // Bounds reported if the budget runs out while representations are still being listed.
    upper_bound_ = ground_.size();
    size_ = std::min(upper_bound_, multiset_counting_bound(targets.size(), k));
    for (const auto& a : targets) {
      std::vector<Representation> reps;
      std::vector<std::uint32_t> parts;
      collect(a, 0, k, parts, reps);
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
      if (reps.empty()) {
        throw InvalidInstance("target " + a.to_string() + " is not a sum of " + std::to_string(k) +
                              " ground elements; no basis exists within the ground set");
      }
      reps_.push_back(std::move(reps));
    }
    chosen_flag_.assign(ground_.size(), 0);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Size and members of a greedy cover, used as the initial upper bound.
  std::vector<std::uint32_t> greedy_cover() const {
    std::vector<char> in(ground_.size(), 0);
    std::vector<std::uint32_t> picked;
    for (const auto& reps : reps_) {
      const Representation* best = nullptr;
      std::size_t best_new = std::numeric_limits<std::size_t>::max();
      for (const auto& r : reps) {
        std::size_t fresh = 0;
        for (auto i : r) fresh += in[i] ? 0 : 1;
        if (fresh < best_new) {
          best_new = fresh;
          best = &r;
        }
      }
      for (auto i : *best) {
        if (!in[i]) {
          in[i] = 1;
          picked.push_back(i);
        }
      }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  /// Lexicographically smallest covering subset of exactly `size` elements.
  std::optional<std::vector<std::uint32_t>> search(std::size_t size, std::size_t upper_bound) {
    size_ = size;
    upper_bound_ = upper_bound;
    chosen_.clear();
    std::fill(chosen_flag_.begin(), chosen_flag_.end(), 0);
    if (dfs(0)) return chosen_;
    return std::nullopt;
  }

 private:
  void collect(const Rational& target, std::size_t start, std::size_t count, std::vector<std::uint32_t>& parts,
               std::vector<Representation>& out) {
    const auto xs = ground_.view();
    if (start >= xs.size()) return;
    if (count == 1) {
      const std::size_t idx = ground_.index_of(target);
      if (idx < xs.size() && idx >= start) {
        parts.push_back(static_cast<std::uint32_t>(idx));
        Representation r = parts;
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        out.push_back(std::move(r));
        parts.pop_back();
      }
      return;
    }
    if (target < xs[start] * count || target > xs.back() * count) return;
    const Rational rest_cap = xs.back() * (count - 1);
    auto it = std::lower_bound(xs.begin() + static_cast<std::ptrdiff_t>(start), xs.end(), target - rest_cap);
    for (; it != xs.end(); ++it) {
      if (*it * count > target) break;
      tick();
      parts.push_back(static_cast<std::uint32_t>(it - xs.begin()));
      collect(target - *it, static_cast<std::size_t>(it - xs.begin()), count - 1, parts, out);
      parts.pop_back();
    }
  }

  void tick() {
    if (++nodes_ > budget_) {
      throw ResourceLimit("node budget of " + std::to_string(budget_) + " exhausted", upper_bound_, size_);
    }
  }

  bool dfs(std::size_t next) {
    tick();
    const std::size_t remaining = size_ - chosen_.size();
    // For every target, the fewest extra elements any still-usable representation
    // needs; a representation is usable when all its missing indices are >= next.
    std::size_t branch_cap = ground_.size();
    bool all_covered = true;
    for (const auto& reps : reps_) {
      std::size_t need = std::numeric_limits<std::size_t>::max();
      std::size_t latest_first_missing = 0;
      bool any_usable = false;
      for (const auto& r : reps) {
        std::size_t missing = 0;
        std::size_t first_missing = ground_.size();
        bool usable = true;
        for (auto i : r) {
          if (chosen_flag_[i]) continue;
          if (i < next) {
            usable = false;
            break;
          }
          if (missing == 0) first_missing = i;
          ++missing;
        }
        if (!usable) continue;
        any_usable = true;
        need = std::min(need, missing);
        if (need == 0) break;
        latest_first_missing = std::max(latest_first_missing, first_missing);
      }
      if (!any_usable || need > remaining) return false;
      if (need > 0) {
        all_covered = false;
        // The next pick cannot come after the first missing element of every usable representation.
        branch_cap = std::min(branch_cap, latest_first_missing + 1);
      }
    }
    if (remaining == 0) return all_covered;
    if (all_covered) {
      // Any padding works; the smallest unused indices keep the witness lexicographically first.
      for (std::size_t i = next; i < ground_.size() && chosen_.size() < size_; ++i) {
        if (!chosen_flag_[i]) push(i);
      }
      return chosen_.size() == size_;
    }
    const std::size_t last_start = ground_.size() - remaining;
    const std::size_t stop = std::min(branch_cap, last_start + 1);
    for (std::size_t i = next; i < stop; ++i) {
      push(i);
      if (dfs(i + 1)) return true;
      pop();
    }
    return false;
  }

  void push(std::size_t i) {
    chosen_.push_back(static_cast<std::uint32_t>(i));
    chosen_flag_[i] = 1;
  }
  void pop() {
    chosen_flag_[chosen_.back()] = 0;
    chosen_.pop_back();
  }

  const ElementSet& ground_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Representation>> reps_;
  std::vector<std::uint32_t> chosen_;
  std::vector<char> chosen_flag_;
  std::size_t size_ = 0;
  std::size_t upper_bound_ = 0;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

/// Minimum |B| over B ⊆ ground with A ⊆ kB, with the lexicographically smallest optimal witness.
/// Throws ResourceLimit when the node budget runs out.
inline SolveResult min_basis(const BasisInstance& instance, const GroundSet& ground,
                             std::uint64_t node_budget = kDefaultNodeBudget) {
  if (instance.k == 0) throw InvalidInstance("k must be at least 1");
  SolveResult result;
  result.exact = ground.exactness == Exactness::ProvenSufficient;
  if (instance.targets.empty()) return result;

  detail::MinBasisSearch search(instance.targets, ground.elements, instance.k, node_budget);
  const std::vector<std::uint32_t> greedy = search.greedy_cover();
  const std::size_t upper = greedy.size();
  const std::size_t lower = std::min(upper, detail::multiset_counting_bound(instance.targets.size(), instance.k));

  for (std::size_t size = lower; size <= upper; ++size) {
    if (auto found = search.search(size, upper)) {
      std::vector<Rational> members;
      for (auto i : *found) members.push_back(ground.elements[i]);
      result.optimal_size = size;
      result.witness = ElementSet::from_sorted_unique(std::move(members));
      break;
    }
  }
  result.nodes_explored = search.nodes();
  for (const auto& a : instance.targets) {
    auto cert = k_sum_membership(a, result.witness, instance.k);
    if (!cert) throw ConstructionFailure("solver witness fails to cover " + a.to_string());
    result.certificates.emplace(a, std::move(*cert));
  }
  return result;
}

/// default_ground_set followed by min_basis.
inline SolveResult ell_over_domain(const ElementSet& targets, std::size_t k, Domain domain,
                                   const GroundOptions& options = {},
                                   std::uint64_t node_budget = kDefaultNodeBudget) {
  const BasisInstance instance{targets, k, domain};
  return min_basis(instance, default_ground_set(instance, options), node_budget);
}

}  // namespace addbasis
