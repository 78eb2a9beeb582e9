#pragma once

#include <stdexcept>
#include <string>

namespace nagumo {

enum class ErrorCode {
  Domain,
  Overflow,
  BudgetExceeded,
  DimensionMismatch,
  ParamMismatch,
  BadParams,
  SingularJacobian,
  NoConvergence,
  EigenFailure,
  StepTooLarge,
  NonfiniteState,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Exception carrying one of the library error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nagumo
