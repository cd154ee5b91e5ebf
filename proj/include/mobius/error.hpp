#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mobius {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotLorentz,
  AllZero,
  RankAmbiguous,
  FullSpace,
  DegenerateSpan,
  NotOnSheet,
  NotSpaceLike,
  NotLightLike,
  NotPositive,
  DuplicatePoints,
  DuplicateRays,
  SameBoundary,
  OnOrOutsideBoundary,
  GramMismatch,
  CommonBoundaryPoint,
  CrossRatioMismatch,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mobius
