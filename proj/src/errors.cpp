#include "platonic/errors.hpp"

namespace platonic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::LightLineProximity: return "LightLineProximity";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DegenerateFormula: return "DegenerateFormula";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoUnityReflectance: return "NoUnityReflectance";
    case ErrorKind::NoUnityTransmittance: return "NoUnityTransmittance";
    case ErrorKind::ModesDidNotMerge: return "ModesDidNotMerge";
    case ErrorKind::Unresolved: return "Unresolved";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoUnityReflectance:
    case ErrorKind::NoUnityTransmittance:
    case ErrorKind::ModesDidNotMerge:
    case ErrorKind::Unresolved:
      return 3;
    default:
      return 2;
  }
}

}  // namespace platonic
