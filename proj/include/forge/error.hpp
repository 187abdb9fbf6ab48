#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

enum class ErrorCode {
  kParseError,
  kShapeMismatch,
  kDependentBasis,
  kDimensionMismatch,
  kVertexMismatch,
  kUnknownElement,
  kNotIntegral,
  kOverlap,
  kTooLarge,
  kEmptyMatroid,
  kLabelMismatch,
  kInvalidTree,
  kInvalidTrace,
  kNoCircuits,
  kBudgetExceeded,
  kBudgetOpen,
  kNotBipartition,
  kBoxTooSmall,
  kVerificationFailed,
  kBadParams,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace forge
