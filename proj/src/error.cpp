#include "nagumo/error.hpp"

namespace nagumo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ParamMismatch: return "PARAM_MISMATCH";
    case ErrorCode::BadParams: return "BAD_PARAMS";
    case ErrorCode::SingularJacobian: return "SINGULAR_JACOBIAN";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::EigenFailure: return "EIGEN_FAILURE";
    case ErrorCode::StepTooLarge: return "STEP_TOO_LARGE";
    case ErrorCode::NonfiniteState: return "NONFINITE_STATE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace nagumo
