#ifndef COXCALC_ERROR_HPP
#define COXCALC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxcalc {

// Stable, machine-readable failure codes. The names returned by
// error_code_name() are part of the CLI's JSON contract; do not rename.
enum class ErrorCode {
  NonPrimitiveRay,
  DuplicateRay,
  DegenerateCone,
  OverlappingCones,
  InvalidFan,
  NotSimplicial,
  RankTooLarge,
  ShapeMismatch,
  RaysDontSpan,
  NoPositivityCertificate,
  DegreeMismatch,
  NotHomogeneous,
  InconsistentImages,
  DegreeInconsistentMap,
  TorsionGrading,
  WindowTooSmall,
  TargetNotSmooth,
  IncompatibleFans,
  NegativeExponent,
  ChartMismatch,
  RingMismatch,
  NotProjectiveSpaceTarget,
  WindowInsufficient,
  NotFreeOnWindow,
  SyntaxError,
  UnresolvedReference,
  DuplicateName,
  UsageError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace coxcalc

#endif  // COXCALC_ERROR_HPP
