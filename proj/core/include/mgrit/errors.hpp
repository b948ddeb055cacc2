#pragma once

#include <stdexcept>
#include <string>

namespace mgrit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or layout mismatch: pack lengths, grid subsets, transfer sizes.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A time step could not be taken (non-finite input, failed inner solve).
class PropagationError : public Error {
 public:
  using Error::Error;
};

/// The space-time residual became non-finite.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Message passing failed or a peer aborted.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (settings, run files, CLI overrides).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgrit
