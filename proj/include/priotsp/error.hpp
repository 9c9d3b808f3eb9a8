#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace priotsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad option, unknown enum value, empty grid, invalid start city, ...
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Input data violates a structural invariant (asymmetric weights, non-permutation tour).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Too few cities for the requested operation.
class DegenerateInstanceError : public Error {
  public:
    using Error::Error;
};

/// Instance too large for an exponential-time routine.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

/// Feature outside the supported subset (GEO weights, plotting EXPLICIT instances).
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// TSPLIB or fixture text could not be parsed. Carries the 1-based line number
/// (0 when the problem is not tied to a specific line).
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Broken internal invariant. Reaching this is a bug, not bad input.
class LogicError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace priotsp
