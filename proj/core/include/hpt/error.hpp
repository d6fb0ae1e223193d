#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpt {

enum class ErrorKind {
  InvalidInput,
  ModuleMismatch,
  RingMismatch,
  NotADifferential,
  MaurerCartanViolation,
  WindowTooSmall,
  UniversalPropertyViolation,
  NotInvertible,
  CommutatorObstruction,
  SdrViolation,
  ComplexMismatch,
  NaturalityViolation,
  CompatibilityViolation,
  NotNilpotent,
  FunctorialityViolation,
  EquivalenceViolation,
  ResampleCapExceeded,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind` is the machine-readable
/// category; `details` carries the individual violations when a validator
/// collects more than one (e.g. the failing SDR relations).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> details = {},
        std::optional<int> degree = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        details_(std::move(details)),
        degree_(degree) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& details() const noexcept { return details_; }
  /// Offending degree, when the failure is localized to one.
  std::optional<int> degree() const noexcept { return degree_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> details_;
  std::optional<int> degree_;
};

}  // namespace hpt
