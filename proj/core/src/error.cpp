#include "circumdiv/error.hpp"

namespace circumdiv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::invalid_kernel: return "INVALID_KERNEL";
    case ErrorCode::invalid_input: return "INVALID_INPUT";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::budget_exceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::not_symmetric: return "NOT_SYMMETRIC";
    case ErrorCode::not_diameter: return "NOT_DIAMETER";
    case ErrorCode::criterion_failed: return "CRITERION_FAILED";
    case ErrorCode::precondition_unmet: return "PRECONDITION_UNMET";
    case ErrorCode::numerical: return "NUMERICAL";
    case ErrorCode::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace circumdiv
