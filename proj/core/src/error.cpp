#include "csvip/error.hpp"

namespace csvip {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kInvalidSet: return "invalid_set";
    case ErrorCode::kInconsistentSystem: return "inconsistent_system";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kNotIsm: return "not_ism";
    case ErrorCode::kStepOutOfRange: return "step_out_of_range";
    case ErrorCode::kNoDefaultStep: return "no_default_step";
    case ErrorCode::kInvalidOperator: return "invalid_operator";
    case ErrorCode::kInvalidWeights: return "invalid_weights";
    case ErrorCode::kInstanceCount: return "instance_count";
    case ErrorCode::kInvalidSchedule: return "invalid_schedule";
    case ErrorCode::kInvalidProblem: return "invalid_problem";
    case ErrorCode::kEmptyTrace: return "empty_trace";
    case ErrorCode::kGridDimension: return "grid_dimension";
    case ErrorCode::kGridEmpty: return "grid_empty";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kMalformedJson: return "malformed_json";
    case ErrorCode::kSchemaViolation: return "schema_violation";
    case ErrorCode::kUnknownField: return "unknown_field";
    case ErrorCode::kUnknownVersion: return "unknown_version";
  }
  return "unknown";
}

}  // namespace csvip
