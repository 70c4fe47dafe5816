#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value, raised before any computation starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, unresolved grids, budget violations and similar numerical failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlslab
