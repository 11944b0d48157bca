#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "csvip/problem.hpp"

namespace csvip {

inline constexpr std::string_view kProblemVersion = "csvip/1";
inline constexpr std::string_view kResultVersion = "csvip-result/1";

/// Run settings carried alongside the instances in a problem document.
struct RunOptions {
  std::optional<double> lambda;
  std::optional<Vector> x0;
  StopRule stop;
};

struct ParsedProblem {
  CsvipProblem problem;
  RunOptions options;
};

/// Parses a `csvip/1` JSON document. Operators are certified on the way in;
/// weights default to uniform; a present lambda is validated against the
/// certified constants. Stop fields absent from the document take their
/// values from `stop_defaults`.
ParsedProblem parse_problem(std::string_view text, const StopRule& stop_defaults = {});

enum class ResultFormat { kJson, kCsvTrace };

/// json: the result document (status, solution, iterations, final residuals,
/// step, full trace). csv-trace: header `k,x_0,...,x_{n-1},r_0,...,r_{N-1}`
/// and one row per iterate.
std::string emit_result(const RunResult& result, ResultFormat format);

/// Inverse of emit_result(.., kJson).
RunResult parse_result(std::string_view text);

}  // namespace csvip
