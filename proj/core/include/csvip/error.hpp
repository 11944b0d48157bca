#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csvip {

// Every rejection the library can produce carries one of these codes. The
// numeric values are stable; the CLI and the problem parser report them.
enum class ErrorCode : int {
  kDimensionMismatch = 10,
  kInvalidSet = 11,
  kInconsistentSystem = 12,
  kNotConverged = 13,
  kNotIsm = 20,
  kStepOutOfRange = 21,
  kNoDefaultStep = 22,
  kInvalidOperator = 23,
  kInvalidWeights = 30,
  kInstanceCount = 31,
  kInvalidSchedule = 32,
  kInvalidProblem = 33,
  kEmptyTrace = 40,
  kGridDimension = 50,
  kGridEmpty = 51,
  kInvalidArgument = 52,
  kMalformedJson = 60,
  kSchemaViolation = 61,
  kUnknownField = 62,
  kUnknownVersion = 63,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace csvip
