#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ite {

enum class ErrorCode {
  InvalidConfig,
  NonPositivePotential,
  AlphaTooSmall,
  OverlappingIntervals,
  BallGivenToGalerkin,
  HelmholtzContrastDegenerate,
  NonPositiveArgument,
  ArgumentOutOfRange,
  DegenerateInterior,
  UnsupportedDimension,
  TooFewCells,
  OrderOutOfRange,
  AsymmetricAssembly,
  NotPositiveDefinite,
  NoConvergence,
  BracketInvalid,
  InsufficientCounts,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ite
