#pragma once

#include <stdexcept>
#include <string>

namespace tpk {

enum class ErrorCode {
  ZeroLimit,
  UnsupportedExponent,
  InconsistentCheck,
  CurveThroughOrigin,
  NonIntegerWinding,
  UndecidableOnBoundary,
  NoPFactorization,
  NonzeroIndex,
  BranchUnwrapFailure,
  ClassArithmeticViolation,
  MembershipUndecided,
  UnboundedSymbol,
  ExponentOutOfRange,
  ZeroOnRealAxis,
  QNotBoundedBelow,
  QfNotInHp,
  NonFiniteSample,
  NoSpectralGap,
  SzegoViolated,
  SyntaxError,
  UnsupportedConstruct,
  InvalidArgument,
};

const char* code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tpk
