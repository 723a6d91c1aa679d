#include "ite/error.hpp"

namespace ite {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonPositivePotential: return "NonPositivePotential";
    case ErrorCode::AlphaTooSmall: return "AlphaTooSmall";
    case ErrorCode::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::BallGivenToGalerkin: return "BallGivenToGalerkin";
    case ErrorCode::HelmholtzContrastDegenerate: return "HelmholtzContrastDegenerate";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorCode::DegenerateInterior: return "DegenerateInterior";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::TooFewCells: return "TooFewCells";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::AsymmetricAssembly: return "AsymmetricAssembly";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::InsufficientCounts: return "InsufficientCounts";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace ite
