#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// Bad user input: malformed partitions, violated preconditions.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computed object contradicts a structural identity that must hold
/// (boundary squared nonzero, non-acyclic matching where acyclicity is a
/// theorem, mismatched component counts).
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured size limit would be exceeded.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace strata
