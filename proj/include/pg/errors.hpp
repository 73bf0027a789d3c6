#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad permutation arrays, dangling labels, bad JSON).
struct FormatError : Error {
  using Error::Error;
};

// A precondition on the mathematical input is violated.
struct ArgumentError : Error {
  using Error::Error;
};

// The input is well-formed but a stated hypothesis fails (e.g. a conjugate
// that is required to land in the pregroup does not).
struct HypothesisError : ArgumentError {
  using ArgumentError::ArgumentError;
};

// A configured size bound was exceeded.
struct ResourceError : Error {
  using Error::Error;
};

// Hard cap on group orders handled by the enumeration routines.  The default
// suffices for every bundled instance; PG_MAX_GROUP_ORDER overrides it.
inline long max_group_order() {
  if (const char *s = std::getenv("PG_MAX_GROUP_ORDER")) {
    long v = std::atol(s);
    if (v > 0)
      return v;
  }
  return 512;
}

} // namespace pg
