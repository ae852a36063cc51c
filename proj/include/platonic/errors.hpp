#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace platonic {

enum class ErrorKind {
  InvalidArgument,
  LightLineProximity,
  NonFinite,
  DegenerateFormula,
  SingularSystem,
  DomainError,
  NoUnityReflectance,
  NoUnityTransmittance,
  ModesDidNotMerge,
  Unresolved,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error kind: 2 for numeric-domain failures,
/// 3 for convergence / optimization failures.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace platonic
