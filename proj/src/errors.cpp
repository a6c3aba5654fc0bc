#include "tpk/errors.hpp"

namespace tpk {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroLimit: return "ZeroLimit";
    case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorCode::InconsistentCheck: return "InconsistentCheck";
    case ErrorCode::CurveThroughOrigin: return "CurveThroughOrigin";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::UndecidableOnBoundary: return "UndecidableOnBoundary";
    case ErrorCode::NoPFactorization: return "NoPFactorization";
    case ErrorCode::NonzeroIndex: return "NonzeroIndex";
    case ErrorCode::BranchUnwrapFailure: return "BranchUnwrapFailure";
    case ErrorCode::ClassArithmeticViolation: return "ClassArithmeticViolation";
    case ErrorCode::MembershipUndecided: return "MembershipUndecided";
    case ErrorCode::UnboundedSymbol: return "UnboundedSymbol";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::ZeroOnRealAxis: return "ZeroOnRealAxis";
    case ErrorCode::QNotBoundedBelow: return "QNotBoundedBelow";
    case ErrorCode::QfNotInHp: return "QfNotInHp";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::NoSpectralGap: return "NoSpectralGap";
    case ErrorCode::SzegoViolated: return "SzegoViolated";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tpk
