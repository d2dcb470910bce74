#pragma once

#include <stdexcept>
#include <string>

namespace bioassay {

/// Bad input: domain violations, malformed files, unmet preconditions.
/// The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
  InvalidInput(std::string parameter, const std::string& what)
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}

  /// Name of the offending parameter, empty when not attributable to one.
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// A numerical procedure failed on valid input (singular system,
/// non-convergence). The CLI maps this to exit code 3.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

/// Logistic fit diverging because the classes are (quasi-)separated.
class SeparationError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace bioassay
