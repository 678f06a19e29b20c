#pragma once

#include <stdexcept>
#include <string>

namespace excoef {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A subset refers to locations outside the ground set, or is malformed.
struct InvalidSubset : Error {
  using Error::Error;
};

/// Bad argument: wrong sizes, out-of-range parameters, non-finite input.
struct InvalidArgument : Error {
  using Error::Error;
};

/// Request exceeds a hard size cap (ground set cap, brute-force caps, ...).
struct TooLarge : Error {
  using Error::Error;
};

/// Capacity table whose common singleton value is zero.
struct DegenerateMarginal : Error {
  using Error::Error;
};

/// Binary realization requested with a bound below the full-set coefficient.
struct BoundTooSmall : Error {
  using Error::Error;
};

/// Transform by a constant function; normalization is undefined.
struct DegenerateTransform : Error {
  using Error::Error;
};

}  // namespace excoef
