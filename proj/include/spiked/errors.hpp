#pragma once

#include <stdexcept>
#include <string>

namespace spiked {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a formula (theta <= 0, z on the cut, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or an ensemble that fails its own definition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// (zI - W) is numerically singular at the requested shift.
class SingularShiftError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The secular function has no sign change over the supplied bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace spiked
