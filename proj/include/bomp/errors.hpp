#pragma once

#include <stdexcept>
#include <string>

namespace bomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The subdictionary selected for a least-squares solve is numerically
/// rank deficient (smallest singular value below rank_tol * largest).
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the caller's operation budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A closed-form bound is undefined for the requested parameters.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A proof-check instance cannot be evaluated (zero-energy alpha, vanishing
/// probe correlation).
class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace bomp
