#pragma once

#include <stdexcept>
#include <string>

namespace qnil {

// Root of every library exception; the CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidOrder : Error { using Error::Error; };
struct UnsupportedDenominator : Error { using Error::Error; };
struct DegenerateBracket : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct UnsupportedConfig : Error { using Error::Error; };
struct InternalConsistency : Error { using Error::Error; };
struct OracleUnavailable : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace qnil
