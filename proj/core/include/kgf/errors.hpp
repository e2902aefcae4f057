#pragma once

#include <stdexcept>
#include <string>

namespace kgf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// parameter outside the mathematical domain of an operation
struct DomainError : Error {
  using Error::Error;
};

// a series, quadrature or extrapolation could not reach the requested accuracy
struct AccuracyError : Error {
  using Error::Error;
};

// integer overflow and similar representability failures
struct RangeError : Error {
  using Error::Error;
};

// caller broke a precondition (mismatched rule, stencil outside domain, wrong parity)
struct ContractError : Error {
  using Error::Error;
};

// requested feature not supported for this field family / dimension
struct CapabilityError : Error {
  using Error::Error;
};

// malformed textual input (field specs)
struct ParseError : Error {
  using Error::Error;
};

}  // namespace kgf
