#include "mobius/error.hpp"

namespace mobius {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotLorentz: return "NotLorentz";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::FullSpace: return "FullSpace";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::NotOnSheet: return "NotOnSheet";
    case ErrorCode::NotSpaceLike: return "NotSpaceLike";
    case ErrorCode::NotLightLike: return "NotLightLike";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DuplicateRays: return "DuplicateRays";
    case ErrorCode::SameBoundary: return "SameBoundary";
    case ErrorCode::OnOrOutsideBoundary: return "OnOrOutsideBoundary";
    case ErrorCode::GramMismatch: return "GramMismatch";
    case ErrorCode::CommonBoundaryPoint: return "CommonBoundaryPoint";
    case ErrorCode::CrossRatioMismatch: return "CrossRatioMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mobius
