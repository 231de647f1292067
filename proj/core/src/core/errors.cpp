#include "pdsched/core/errors.hpp"

namespace pdsched {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kIncompleteSchedule: return "IncompleteSchedule";
    case ErrorCode::kUnsupportedQuadrature: return "UnsupportedQuadrature";
    case ErrorCode::kUnsupportedInExactMode: return "UnsupportedInExactMode";
    case ErrorCode::kUnsupportedShape: return "UnsupportedShape";
    case ErrorCode::kNonPositiveDemand: return "NonPositiveDemand";
    case ErrorCode::kDerivativeSingularity: return "DerivativeSingularity";
    case ErrorCode::kStepUnderflow: return "StepUnderflow";
    case ErrorCode::kNegativeDual: return "NegativeDual";
    case ErrorCode::kNoSuccessor: return "NoSuccessor";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kUnboundedEnvelope: return "UnboundedEnvelope";
    case ErrorCode::kOutOfTheoremScope: return "OutOfTheoremScope";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInfeasible: return "Infeasible";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace pdsched
