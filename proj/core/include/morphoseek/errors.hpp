#pragma once

#include <stdexcept>

namespace morphoseek {

/// Base class of all library errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector/grid size mismatches and invalid grid shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Physically invalid parameter values (F == 0, nonpositive spacing, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values (ranges, counts, probabilities).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent serialized documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values where finite ones are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace morphoseek
