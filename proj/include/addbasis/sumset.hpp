#pragma once

// k-fold sumsets with repetition and membership certificates.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/rational.hpp"

namespace addbasis {

/// { b_1 + ... + b_k : b_i in B }, repetition allowed.
inline ElementSet k_fold_sumset(const ElementSet& base, std::size_t k) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  ElementSet current = base;
  for (std::size_t stage = 1; stage < k; ++stage) {
    std::vector<Rational> sums;
    sums.reserve(current.size() * base.size());
    for (const auto& s : current)
      for (const auto& b : base) sums.push_back(s + b);
    current = ElementSet(std::move(sums));
  }
  return current;
}

/// B ∪ (-B).
inline ElementSet signed_closure(const ElementSet& base) {
  std::vector<Rational> out(base.begin(), base.end());
  for (const auto& b : base) out.push_back(-b);
  return ElementSet(std::move(out));
}

namespace detail {

// Depth-first search for `count` non-decreasing parts drawn from xs[start..]
// summing to `target`. Parts are tried in increasing order, so the first hit
// is the lexicographically smallest certificate.
inline bool find_sum(std::span<const Rational> xs, std::size_t start, const Rational& target,
                     std::size_t count, std::vector<Rational>& parts) {
  if (start >= xs.size()) return false;
  const auto begin = xs.begin() + static_cast<std::ptrdiff_t>(start);
  if (count == 1) {
    const auto it = std::lower_bound(begin, xs.end(), target);
    if (it == xs.end() || *it != target) return false;
    parts.push_back(*it);
    return true;
  }
  const Rational& top = xs.back();
  if (target < xs[start] * count || target > top * count) return false;

  if (count == 2) {
    auto lo = std::lower_bound(begin, xs.end(), target - top);
    auto hi = std::upper_bound(lo, xs.end(), target - xs[start]);
    if (lo == hi) return false;
    --hi;
    while (lo <= hi) {
      const Rational sum = *lo + *hi;
      if (sum == target) {
        parts.push_back(*lo);
        parts.push_back(*hi);
        return true;
      }
      if (sum < target) {
        ++lo;
      } else {
        if (hi == lo) break;
        --hi;
      }
    }
    return false;
  }

  const Rational rest_cap = top * (count - 1);
  for (auto it = std::lower_bound(begin, xs.end(), target - rest_cap); it != xs.end(); ++it) {
    if (*it * count > target) break;
    parts.push_back(*it);
    if (find_sum(xs, static_cast<std::size_t>(it - xs.begin()), target - *it, count - 1, parts)) return true;
    parts.pop_back();
  }
  return false;
}

}  // namespace detail

/// Certificate that t ∈ kX without materializing kX; nullopt when t ∉ kX.
inline std::optional<SumCertificate> k_sum_membership(const Rational& target, const ElementSet& set,
                                                      std::size_t k) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  std::vector<Rational> parts;
  parts.reserve(k);
  if (!detail::find_sum(set.view(), 0, target, k, parts)) return std::nullopt;
  return SumCertificate{target, std::move(parts)};
}

struct CoverageReport {
  bool covered = true;
  std::map<Rational, std::optional<SumCertificate>> certificates;

  std::vector<Rational> failures() const {
    std::vector<Rational> out;
    for (const auto& [target, cert] : certificates)
      if (!cert) out.push_back(target);
    return out;
  }
};

/// Checks A ⊆ kB and records a certificate (or its absence) for every a ∈ A.
inline CoverageReport is_k_basis(const ElementSet& basis, const ElementSet& targets, std::size_t k) {
  if (k == 0) throw InvalidParameter("k must be at least 1");
  CoverageReport report;
  for (const auto& a : targets) {
    auto cert = k_sum_membership(a, basis, k);
    if (!cert) report.covered = false;
    report.certificates.emplace(a, std::move(cert));
  }
  return report;
}

}  // namespace addbasis
