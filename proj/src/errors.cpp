#include "stokes/errors.hpp"

namespace stokes {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::MultipleInfinities: return "MultipleInfinities";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::SingularEvaluation: return "SingularEvaluation";
    case ErrorKind::OutsideTruncationRadius: return "OutsideTruncationRadius";
    case ErrorKind::AtPole: return "AtPole";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::RayThroughSingularity: return "RayThroughSingularity";
    case ErrorKind::InvalidRay: return "InvalidRay";
    case ErrorKind::InvalidCauchyData: return "InvalidCauchyData";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularRay: return "SingularRay";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::FlipAtZero: return "FlipAtZero";
    case ErrorKind::DegenerateAsymptotics: return "DegenerateAsymptotics";
    case ErrorKind::InfiniteMultiplier: return "InfiniteMultiplier";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidRay:
    case ErrorKind::InvalidCauchyData:
    case ErrorKind::OutsideTruncationRadius:
    case ErrorKind::AtPole:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace stokes
