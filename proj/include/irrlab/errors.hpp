#pragma once

#include <stdexcept>
#include <string>

namespace irrlab {

// Base class for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation's precondition was violated.
struct DomainError : Error {
  using Error::Error;
};

// A probability vector failed validation (negative mass or wrong total).
struct InvalidDistribution : Error {
  using Error::Error;
};

// Input text could not be parsed. `line` is 1-based; 0 means end of input.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& message)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + message
                        : message),
        line(line_) {}
};

// The requested output state has zero probability.
struct UnreachableState : Error {
  using Error::Error;
};

// KL divergence is undefined: p carries mass where q has none. Callers must
// treat the measure as undefined, never as a finite number.
struct AbsoluteContinuityViolation : Error {
  using Error::Error;
};

}  // namespace irrlab
