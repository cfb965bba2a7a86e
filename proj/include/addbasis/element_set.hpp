#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "addbasis/rational.hpp"

namespace addbasis {

/// Finite set of rationals, stored strictly increasing.
class ElementSet {
 public:
  using value_type = Rational;
  using const_iterator = std::vector<Rational>::const_iterator;

  ElementSet() = default;
  ElementSet(std::initializer_list<Rational> values) : ElementSet(std::vector<Rational>(values)) {}
  explicit ElementSet(std::vector<Rational> values) : elements_(std::move(values)) { normalize(); }

  template <std::input_iterator It>
  ElementSet(It first, It last) : elements_(first, last) {
    normalize();
  }

  /// Skips sorting; the caller guarantees strictly increasing input.
  static ElementSet from_sorted_unique(std::vector<Rational> values) {
    ElementSet s;
    s.elements_ = std::move(values);
    return s;
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const_iterator begin() const noexcept { return elements_.begin(); }
  const_iterator end() const noexcept { return elements_.end(); }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }
  const Rational& min() const { return elements_.front(); }
  const Rational& max() const { return elements_.back(); }
  const std::vector<Rational>& elements() const noexcept { return elements_; }
  std::span<const Rational> view() const noexcept { return elements_; }

  bool contains(const Rational& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  /// Index of x, or size() when absent.
  std::size_t index_of(const Rational& x) const {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    return (it != elements_.end() && *it == x) ? static_cast<std::size_t>(it - elements_.begin()) : size();
  }

  bool is_subset_of(const ElementSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  bool all_integers() const {
    return std::all_of(begin(), end(), [](const Rational& x) { return x.is_integer(); });
  }
  bool all_non_negative() const { return empty() || min().sign() >= 0; }

  ElementSet scaled(const Rational& factor) const {
    std::vector<Rational> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(x * factor);
    return ElementSet(std::move(out));
  }

  ElementSet translated(const Rational& offset) const {
    std::vector<Rational> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(x + offset);
    return from_sorted_unique(std::move(out));
  }

  ElementSet non_negative_part() const {
    const auto first = std::lower_bound(elements_.begin(), elements_.end(), Rational());
    return from_sorted_unique(std::vector<Rational>(first, elements_.end()));
  }

  friend ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    std::vector<Rational> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted_unique(std::move(out));
  }

  friend ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    std::vector<Rational> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted_unique(std::move(out));
  }

  friend ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    std::vector<Rational> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return from_sorted_unique(std::move(out));
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i != 0) s += ", ";
      s += elements_[i].to_string();
    }
    return s + "}";
  }

 private:
  void normalize() {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  std::vector<Rational> elements_;
};

inline std::ostream& operator<<(std::ostream& os, const ElementSet& s) { return os << s.to_string(); }

/// Witness that `target` is a sum of `parts.size()` members of some set.
struct SumCertificate {
  Rational target;
  std::vector<Rational> parts;  ///< non-decreasing

  /// True when parts sum to target, are sorted, and all lie in `set`.
  bool validates(const ElementSet& set, std::size_t k) const {
    if (parts.size() != k) return false;
    if (!std::is_sorted(parts.begin(), parts.end())) return false;
    Rational sum;
    for (const auto& p : parts) {
      if (!set.contains(p)) return false;
      sum += p;
    }
    return sum == target;
  }

  friend bool operator==(const SumCertificate&, const SumCertificate&) = default;
};

}  // namespace addbasis
