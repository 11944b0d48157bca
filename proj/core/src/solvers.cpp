#include "csvip/solvers.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "csvip/diagnostics.hpp"
#include "csvip/error.hpp"

namespace csvip {

namespace {

using Advance = std::function<Vector(const Vector& x, long k, Vector* intermediate)>;

void check_inputs(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                  const StopRule& stop) {
  if (static_cast<std::size_t>(x0.size()) != problem.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "starting point has dimension " + std::to_string(x0.size()) +
                    ", problem has dimension " + std::to_string(problem.dim()));
  }
  if (!x0.allFinite()) throw Error(ErrorCode::kInvalidArgument, "starting point is not finite");
  const auto alphas = problem.alphas();
  const double bound = *std::min_element(alphas.begin(), alphas.end());
  if (!(step.lambda > 0.0) || !(step.lambda < 2.0 * bound)) {
    throw Error(ErrorCode::kStepOutOfRange,
                "step " + std::to_string(step.lambda) + " outside (0, 2*alpha) with alpha = " +
                    std::to_string(bound));
  }
  if (!(stop.residual_tol > 0.0) || stop.max_iters < 1 || !(stop.stall_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid stopping rule");
  }
}

class Driver {
 public:
  Driver(const CsvipProblem& problem, const StepSize& step, const StopRule& stop,
         bool keep_intermediate, std::size_t stall_lookback = 1)
      : ops_(problem.step_operators(step)), step_(step), stop_(stop),
        keep_intermediate_(keep_intermediate), stall_lookback_(stall_lookback) {}

  const std::vector<StepOperator>& ops() const { return ops_; }

  RunResult run(const Vector& x0, const Advance& advance) {
    RunResult result;
    result.step = step_;
    auto& trace = result.trace;
    std::vector<double> norms;

    auto record = [&](Vector x) {
      std::vector<double> row;
      row.reserve(ops_.size());
      for (const auto& t : ops_) row.push_back(vip_residual(t, x));
      trace.residuals.push_back(*std::max_element(row.begin(), row.end()));
      trace.instance_residuals.push_back(std::move(row));
      norms.push_back(x.norm());
      trace.iterates.push_back(std::move(x));
    };

    record(x0);
    for (long k = 0;; ++k) {
      const Vector& x = trace.iterates.back();
      const double residual = trace.residuals.back();
      if (residual <= stop_.residual_tol) {
        result.status = RunStatus::kConverged;
        break;
      }
      // Single-operator schemes can sit at a fixed point of one operator for
      // a few steps, so stalling is judged over stall_lookback_ steps.
      if (trace.size() > stall_lookback_ &&
          (x - trace.iterates[trace.size() - 1 - stall_lookback_]).norm() < stop_.stall_tol) {
        result.status = RunStatus::kStalled;
        break;
      }
      if (classify_norm_growth(norms, stop_.divergence_window, stop_.divergence_factor) ==
          DivergenceVerdict::kGrowing) {
        result.status = RunStatus::kDiverging;
        break;
      }
      if (k >= stop_.max_iters) {
        result.status = RunStatus::kMaxIters;
        break;
      }
      Vector intermediate;
      Vector next = advance(x, k, keep_intermediate_ ? &intermediate : nullptr);
      if (keep_intermediate_) trace.intermediate.push_back(std::move(intermediate));
      record(std::move(next));
    }
    result.solution = trace.iterates.back();
    return result;
  }

 private:
  std::vector<StepOperator> ops_;
  StepSize step_;
  StopRule stop_;
  bool keep_intermediate_;
  std::size_t stall_lookback_;
};

}  // namespace

StepSize default_step(const CsvipProblem& problem, std::optional<double> lambda) {
  const auto alphas = problem.alphas();
  return validate_step(lambda, alphas);
}

Vector default_start(const CsvipProblem& problem) {
  return Vector::Zero(static_cast<Eigen::Index>(problem.dim()));
}

RunResult solve_alternating(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                            const StopRule& stop) {
  if (problem.size() != 2) {
    throw Error(ErrorCode::kInstanceCount,
                "alternating scheme needs exactly 2 instances, got " +
                    std::to_string(problem.size()));
  }
  check_inputs(problem, step, x0, stop);
  Driver driver(problem, step, stop, true);
  const auto& ops = driver.ops();
  return driver.run(x0, [&](const Vector& x, long, Vector* intermediate) {
    Vector y = ops[1](x);
    Vector next = ops[0](y);
    if (intermediate) *intermediate = std::move(y);
    return next;
  });
}

RunResult solve_sequential(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                           const StopRule& stop) {
  check_inputs(problem, step, x0, stop);
  Driver driver(problem, step, stop, true);
  const auto& ops = driver.ops();
  return driver.run(x0, [&](const Vector& x, long, Vector* intermediate) {
    Vector y = ops.back()(x);
    if (intermediate) *intermediate = y;
    for (std::size_t i = ops.size() - 1; i-- > 0;) y = ops[i](y);
    return y;
  });
}

RunResult solve_parallel(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                         const StopRule& stop) {
  check_inputs(problem, step, x0, stop);
  const std::vector<double> weights = problem.effective_weights();
  Driver driver(problem, step, stop, false);
  const auto& ops = driver.ops();
  return driver.run(x0, [&](const Vector& x, long, Vector*) {
    Vector sum = Vector::Zero(x.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (weights[i] == 0.0) continue;
      sum += weights[i] * ops[i](x);
    }
    return sum;
  });
}

RunResult solve_unrestricted(const CsvipProblem& problem, const Schedule& schedule,
                             const StepSize& step, const Vector& x0, const StopRule& stop) {
  check_inputs(problem, step, x0, stop);
  const std::size_t n = problem.size();
  std::function<std::size_t(long)> pick;
  std::size_t lookback = n;
  if (std::holds_alternative<CyclicSchedule>(schedule)) {
    pick = [n](long k) { return static_cast<std::size_t>(k) % n; };
  } else if (const auto* r = std::get_if<RandomSchedule>(&schedule)) {
    // A uniform draw misses a given index over 20n steps with probability < e^-20.
    lookback = 20 * n;
    auto engine = std::make_shared<std::mt19937_64>(r->seed);
    auto dist = std::make_shared<std::uniform_int_distribution<std::size_t>>(0, n - 1);
    pick = [engine, dist](long) { return (*dist)(*engine); };
  } else {
    const auto& indices = std::get<ExplicitSchedule>(schedule).indices;
    if (indices.empty()) {
      throw Error(ErrorCode::kInvalidSchedule, "explicit schedule needs at least one index");
    }
    for (std::size_t i : indices) {
      if (i >= n) {
        throw Error(ErrorCode::kInvalidSchedule,
                    "schedule index " + std::to_string(i) + " out of range for " +
                        std::to_string(n) + " instances");
      }
    }
    lookback = indices.size();
    pick = [indices](long k) { return indices[static_cast<std::size_t>(k) % indices.size()]; };
  }
  Driver driver(problem, step, stop, false, lookback);
  const auto& ops = driver.ops();
  return driver.run(x0, [&](const Vector& x, long k, Vector*) { return ops[pick(k)](x); });
}

}  // namespace csvip
