#pragma once

#include <stdexcept>
#include <string>

namespace qubols {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector/model size mismatch (wrong bit-string length, matrix shape, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (instance files, solution files, numbers).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An ill-formed model request (empty one-hot group, overlapping pairs, ...).
class FormulationError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Model exceeds the annealer's variable capacity.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace qubols
