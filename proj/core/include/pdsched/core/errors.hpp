#ifndef PDSCHED_CORE_ERRORS_HPP_
#define PDSCHED_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdsched {

enum class ErrorCode {
  kInvalidInput,
  kIncompleteSchedule,
  kUnsupportedQuadrature,
  kUnsupportedInExactMode,
  kUnsupportedShape,
  kNonPositiveDemand,
  kDerivativeSingularity,
  kStepUnderflow,
  kNegativeDual,
  kNoSuccessor,
  kIterationCapExceeded,
  kUnboundedEnvelope,
  kOutOfTheoremScope,
  kTooLarge,
  kInfeasible,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pdsched

#endif  // PDSCHED_CORE_ERRORS_HPP_
