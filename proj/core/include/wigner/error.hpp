#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wigner {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported or inconsistent configuration (filter order, regularity, limits).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (size mismatch, out of range cut).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input for which the requested quantity is undefined (e.g. entropy of zero).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: singular system, no convergence, blow-up.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, std::vector<double> history = {})
      : Error(what), history_(std::move(history)) {}

  /// Residual or norm trace recorded up to the failure, when available.
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace wigner
