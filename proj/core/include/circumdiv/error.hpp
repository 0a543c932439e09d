#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circumdiv {

/// Machine-readable failure categories. The CLI prints these verbatim.
enum class ErrorCode {
  dimension_mismatch,
  invalid_kernel,
  invalid_input,
  parse_error,
  budget_exceeded,
  not_symmetric,
  not_diameter,
  criterion_failed,
  precondition_unmet,
  numerical,
  internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace circumdiv
