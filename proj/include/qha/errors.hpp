#pragma once

#include <stdexcept>
#include <string>

namespace qha {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element/shape mismatch, malformed tables, out-of-range indices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Bad numeric parameter (p < 1, n <= 0, invalid ranges, exponent relations).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class NotPositiveError : public Error {
 public:
  using Error::Error;
};

// Function applied outside its domain in the spectral calculus.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qha
