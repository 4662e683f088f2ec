#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stokes {

enum class ErrorKind {
  // sphere
  DegenerateConfiguration,
  MultipleInfinities,
  DegenerateMap,
  // potentials
  SingularEvaluation,
  OutsideTruncationRadius,
  AtPole,
  PoleEncountered,
  // integrate
  RayThroughSingularity,
  InvalidRay,
  InvalidCauchyData,
  NoConvergence,
  SingularRay,
  StiffnessFailure,
  FlipAtZero,
  // monodromy
  DegenerateAsymptotics,
  InfiniteMultiplier,
  // generic argument validation
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of the numerical pipeline (as opposed to bad input).
bool is_numerical_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stokes
