#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "csvip/error.hpp"
#include "csvip/problemio.hpp"
#include "csvip/solvers.hpp"

namespace csvip {
namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CSVIP_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "document parsed without error";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseProblem, TwoIntervals) {
  const auto parsed = parse_problem(read_fixture("two_intervals.json"));
  EXPECT_EQ(parsed.problem.size(), 2u);
  EXPECT_EQ(parsed.problem.dim(), 1u);
  for (double a : parsed.problem.alphas()) EXPECT_NEAR(a, 1.0, 1e-12);
  ASSERT_TRUE(parsed.options.lambda.has_value());
  EXPECT_EQ(*parsed.options.lambda, 1.0);
  ASSERT_TRUE(parsed.options.x0.has_value());
  EXPECT_EQ((*parsed.options.x0)[0], 10.0);
}

TEST(ParseProblem, UniformWeightsInjected) {
  const auto parsed = parse_problem(read_fixture("three_sets.json"));
  ASSERT_TRUE(parsed.problem.weights().has_value());
  for (double w : *parsed.problem.weights()) EXPECT_DOUBLE_EQ(w, 1.0 / 3.0);
}

TEST(ParseProblem, StopDefaultsAndOverrides) {
  StopRule defaults;
  defaults.max_iters = 77;
  const auto a = parse_problem(read_fixture("two_intervals.json"), defaults);
  EXPECT_EQ(a.options.stop.max_iters, 77);
  const auto b = parse_problem(read_fixture("ball_halfspace.json"), defaults);
  EXPECT_EQ(b.options.stop.residual_tol, 1e-9);
}

struct AdversarialCase {
  const char* file;
  ErrorCode code;
};

class Adversarial : public ::testing::TestWithParam<AdversarialCase> {};

TEST_P(Adversarial, RejectedWithDistinctCode) {
  const auto& c = GetParam();
  EXPECT_EQ(parse_code(read_fixture(std::string("adversarial/") + c.file)), c.code)
      << error_code_name(c.code);
}

INSTANTIATE_TEST_SUITE_P(
    Fixtures, Adversarial,
    ::testing::Values(AdversarialCase{"wrong_dims.json", ErrorCode::kDimensionMismatch},
                      AdversarialCase{"negative_radius.json", ErrorCode::kInvalidSet},
                      AdversarialCase{"bad_weights.json", ErrorCode::kInvalidWeights},
                      AdversarialCase{"lambda_out_of_range.json", ErrorCode::kStepOutOfRange},
                      AdversarialCase{"unknown_version.json", ErrorCode::kUnknownVersion},
                      AdversarialCase{"unknown_field.json", ErrorCode::kUnknownField},
                      AdversarialCase{"malformed.json", ErrorCode::kMalformedJson},
                      AdversarialCase{"skew_operator.json", ErrorCode::kNotIsm},
                      AdversarialCase{"missing_instances.json", ErrorCode::kSchemaViolation}),
    [](const auto& info) {
      std::string name = info.param.file;
      return name.substr(0, name.find('.'));
    });

RunResult run_fixture(const std::string& name) {
  const auto parsed = parse_problem(read_fixture(name));
  const auto step = default_step(parsed.problem, parsed.options.lambda);
  const Vector x0 = parsed.options.x0.value_or(default_start(parsed.problem));
  return solve_alternating(parsed.problem, step, x0, parsed.options.stop);
}

TEST(EmitResult, JsonRoundTripIsExact) {
  for (const char* name : {"two_intervals.json", "diverging_constant.json", "subspaces_r2.json"}) {
    SCOPED_TRACE(name);
    const auto r = run_fixture(name);
    const std::string text = emit_result(r, ResultFormat::kJson);
    const auto back = parse_result(text);
    EXPECT_EQ(back.status, r.status);
    EXPECT_EQ(back.solution, r.solution);
    EXPECT_EQ(back.step.lambda, r.step.lambda);
    EXPECT_EQ(back.step.alpha_bound, r.step.alpha_bound);
    EXPECT_EQ(back.trace.iterates, r.trace.iterates);
    EXPECT_EQ(back.trace.intermediate, r.trace.intermediate);
    EXPECT_EQ(back.trace.residuals, r.trace.residuals);
    EXPECT_EQ(back.trace.instance_residuals, r.trace.instance_residuals);
    EXPECT_EQ(emit_result(back, ResultFormat::kJson), text);
  }
}

TEST(EmitResult, CsvTrace) {
  const auto r = run_fixture("two_intervals.json");
  const std::string csv = emit_result(r, ResultFormat::kCsvTrace);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,x_0,r_0,r_1");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,10,", 0), 0u) << line;
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, r.trace.size());
}

TEST(EmitResult, ZeroIterationCsvHasOneRow) {
  const CsvipProblem p({Instance{ConvexSet::whole_space(1), IsmOperator::zero(1)},
                        Instance{ConvexSet::whole_space(1), IsmOperator::zero(1)}});
  Vector x0(1);
  x0 << 4.0;
  const auto r = solve_alternating(p, default_step(p, 1.0), x0);
  ASSERT_EQ(r.iterations(), 0u);
  EXPECT_EQ(emit_result(r, ResultFormat::kCsvTrace), "k,x_0,r_0,r_1\n0,4,0,0\n");
}

TEST(ParseResult, RejectsForeignDocuments) {
  try {
    parse_result(R"({"version": "csvip-result/0"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownVersion);
  }
  try {
    parse_result("[1, 2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedJson);
  }
}

}  // namespace
}  // namespace csvip
