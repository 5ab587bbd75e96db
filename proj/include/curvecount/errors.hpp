#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvecount {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed, inconsistent or out-of-domain user input. CLI exit code 1.
struct InputError : Error {
  using Error::Error;
};

// Evaluation outside a curve's domain (log of a non-positive number, etc).
struct DomainError : InputError {
  using InputError::InputError;
};

// The requested operation is not defined for this curve kind, e.g. exact
// critical sets of an analytic curve.
struct UnsupportedCurve : InputError {
  using InputError::InputError;
};

// Index outside a bound's applicability range.
struct OutOfRange : InputError {
  using InputError::InputError;
};

// Set too small for the requested statistic.
struct SizeError : InputError {
  using InputError::InputError;
};

// Exponent fit asked for on a series with repeated abscissas or
// non-positive values.
struct DegenerateSeries : InputError {
  using InputError::InputError;
};

// Profiles built over different ground sets were combined.
struct MismatchedGround : InputError {
  using InputError::InputError;
};

// Resource budget violations. CLI exit code 2.
struct ResourceError : Error {
  using Error::Error;
};

// A sparse profile would exceed the configured key-count cap.
struct CapacityExceeded : ResourceError {
  CapacityExceeded(std::size_t estimated_keys, std::size_t cap)
      : ResourceError("profile key count " + std::to_string(estimated_keys) +
                      " exceeds capacity cap " + std::to_string(cap)),
        estimated(estimated_keys),
        capacity(cap) {}
  std::size_t estimated;
  std::size_t capacity;
};

// A brute-force enumeration would exceed the oracle tuple budget.
struct BudgetExceeded : ResourceError {
  BudgetExceeded(const std::string& required, unsigned long long budget)
      : ResourceError("oracle enumeration of " + required +
                      " tuples exceeds budget " + std::to_string(budget)),
        budget(budget) {}
  unsigned long long budget;
};

// Internal invariant violation; never expected. CLI exit code 3.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace curvecount
