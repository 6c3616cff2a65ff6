#pragma once

#include <stdexcept>
#include <string>

namespace polymax {

// Common base so callers can catch everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid arguments: bad shapes, indices out of range,
// mismatched sizes.
struct InputError : Error {
  using Error::Error;
};

// A value left an operation's domain, e.g. a non-binary payoff fed to a
// boolean-formula aggregator.
struct DomainError : Error {
  using Error::Error;
};

// An enumeration or solver size guard would be exceeded.
struct ResourceError : Error {
  using Error::Error;
};

// Malformed serialized input; the message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

// A numerical routine could not reach its tolerance (singular system,
// pivot cap). Should not occur on valid input; treat as a defect signal.
struct NumericalError : Error {
  using Error::Error;
};

// The mixture solver exhausted its round budget without a verified solution.
struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace polymax
