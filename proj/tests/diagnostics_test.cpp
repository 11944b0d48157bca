#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "csvip/diagnostics.hpp"
#include "csvip/error.hpp"
#include "csvip/solvers.hpp"

namespace csvip {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

IterationTrace trace_of(std::initializer_list<double> xs) {
  IterationTrace t;
  for (double x : xs) t.iterates.push_back(vec({x}));
  return t;
}

CsvipProblem constant_pair() {
  return CsvipProblem({Instance{ConvexSet::whole_space(1), IsmOperator::constant(vec({1}))},
                       Instance{ConvexSet::whole_space(1), IsmOperator::constant(vec({1}))}});
}

TEST(FejerCheck, MonotoneTraceHasNoViolations) {
  const auto r = fejer_check(trace_of({10, 5, 3, 2, 2}), vec({2}));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.max_violation, 0.0);
  EXPECT_EQ(r.reference_point, vec({2}));
}

TEST(FejerCheck, FabricatedStepAwayIsReported) {
  const auto r = fejer_check(trace_of({0, 1}), vec({0}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].iteration, 0u);
  EXPECT_DOUBLE_EQ(r.violations[0].magnitude, 1.0);
  EXPECT_DOUBLE_EQ(r.max_violation, 1.0);
}

TEST(FejerCheck, ToleranceAbsorbsRoundoff) {
  const auto r = fejer_check(trace_of({1, 1 + 1e-13}), vec({0}));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GT(r.max_violation, 0.0);
}

TEST(FejerCheck, Errors) {
  try {
    fejer_check(IterationTrace{}, vec({0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyTrace);
  }
  try {
    fejer_check(trace_of({1, 2}), vec({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(FejerCheck, SolverTraceAgainstKnownSolution) {
  const CsvipProblem p({Instance{ConvexSet::box(vec({0}), vec({2})),
                                 IsmOperator::affine(Matrix::Identity(1, 1), vec({-2}))},
                        Instance{ConvexSet::box(vec({1}), vec({3})),
                                 IsmOperator::affine(Matrix::Identity(1, 1), vec({-2}))}});
  const auto r = solve_alternating(p, default_step(p, 1.0), vec({10}));
  EXPECT_TRUE(fejer_check(r.trace, vec({2})).violations.empty());
}

TEST(ClassifyNormGrowth, Verdicts) {
  std::vector<double> linear;
  for (int k = 0; k <= 200; ++k) linear.push_back(k);
  EXPECT_EQ(classify_norm_growth(linear, 50, 100.0), DivergenceVerdict::kGrowing);
  // Growing but still below the threshold band: neither growing nor bounded.
  EXPECT_EQ(classify_norm_growth(std::span(linear).first(60), 50, 100.0),
            DivergenceVerdict::kInconclusive);

  std::vector<double> flat(80, 3.0);
  EXPECT_EQ(classify_norm_growth(flat, 50, 100.0), DivergenceVerdict::kBounded);
  EXPECT_EQ(classify_norm_growth(std::span(flat).first(10), 50, 100.0),
            DivergenceVerdict::kInconclusive);
}

TEST(DivergenceMonitor, ConstantOperatorGrows) {
  const auto p = constant_pair();
  StopRule stop;
  stop.max_iters = 200;
  stop.divergence_window = 1000;  // keep the solver from stopping early
  const auto r = solve_alternating(p, default_step(p, 0.5), vec({0}), stop);
  ASSERT_EQ(r.trace.size(), 201u);
  const auto d = divergence_monitor(r.trace);
  EXPECT_EQ(d.verdict, DivergenceVerdict::kGrowing);
  ASSERT_EQ(d.norm_series.size(), r.trace.size());
  EXPECT_DOUBLE_EQ(d.norm_series.back(), 200.0);
}

TEST(DivergenceMonitor, ConvergedTraceIsBounded) {
  const CsvipProblem p({Instance{ConvexSet::box(vec({0}), vec({2})), IsmOperator::zero(1)},
                        Instance{ConvexSet::box(vec({1}), vec({3})), IsmOperator::zero(1)}});
  const auto r = solve_alternating(p, default_step(p, 1.0), vec({10}));
  EXPECT_EQ(r.status, RunStatus::kConverged);
  EXPECT_EQ(divergence_monitor(r.trace, 1).verdict, DivergenceVerdict::kBounded);
  // Too short for the default window.
  EXPECT_EQ(divergence_monitor(trace_of({3, 2, 2})).verdict, DivergenceVerdict::kInconclusive);
}

TEST(ResidualSeries, OneRowPerIterate) {
  const CsvipProblem p({Instance{ConvexSet::box(vec({0}), vec({2})), IsmOperator::zero(1)},
                        Instance{ConvexSet::box(vec({1}), vec({3})), IsmOperator::zero(1)}});
  const auto step = default_step(p, 1.0);
  const auto rows = residual_series(p, trace_of({-1, 0.5, 1.5}), step);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0][0], 1.0);
  EXPECT_DOUBLE_EQ(rows[0][1], 2.0);
  EXPECT_DOUBLE_EQ(rows[1][0], 0.0);
  EXPECT_DOUBLE_EQ(rows[1][1], 0.5);
  EXPECT_DOUBLE_EQ(rows[2][0], 0.0);
  EXPECT_DOUBLE_EQ(rows[2][1], 0.0);
}

}  // namespace
}  // namespace csvip
