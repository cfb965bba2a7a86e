#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace addbasis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A numeric parameter is outside its documented range (k = 0, empty grid, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Inputs violate an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A basis instance is malformed (empty target set, domain mismatch, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// A claimed basis does not generate the target set.
class InvalidWitness : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed as a scalar, set, or instance.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A construction could not establish one of its internal guarantees.
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

/// Search ran out of its node budget. Carries the best upper bound known at that point.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::size_t best_upper_bound,
                std::size_t proven_lower_bound)
      : Error(what),
        best_upper_bound_(best_upper_bound),
        proven_lower_bound_(proven_lower_bound) {}

  std::size_t best_upper_bound() const noexcept { return best_upper_bound_; }
  std::size_t proven_lower_bound() const noexcept { return proven_lower_bound_; }

 private:
  std::size_t best_upper_bound_;
  std::size_t proven_lower_bound_;
};

}  // namespace addbasis
