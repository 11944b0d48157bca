#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "csvip/geometry.hpp"
#include "csvip/operators.hpp"

namespace csvip {

struct Instance {
  ConvexSet set;
  IsmOperator op;
};

/// N pairs (C_i, f_i) sharing one dimension, plus optional convex weights.
class CsvipProblem {
 public:
  explicit CsvipProblem(std::vector<Instance> instances,
                        std::optional<std::vector<double>> weights = std::nullopt);

  const std::vector<Instance>& instances() const { return instances_; }
  const Instance& instance(std::size_t i) const { return instances_.at(i); }
  std::size_t size() const { return instances_.size(); }
  std::size_t dim() const { return dim_; }
  const std::optional<std::vector<double>>& weights() const { return weights_; }

  /// Given weights, or uniform 1/N.
  std::vector<double> effective_weights() const;

  std::vector<double> alphas() const;

  /// One step operator per instance, all sharing `step`.
  std::vector<StepOperator> step_operators(const StepSize& step) const;

 private:
  std::vector<Instance> instances_;
  std::size_t dim_;
  std::optional<std::vector<double>> weights_;
};

struct CyclicSchedule {};

struct RandomSchedule {
  std::uint64_t seed = 0;
};

/// Instance indices applied in order; the list repeats once exhausted.
struct ExplicitSchedule {
  std::vector<std::size_t> indices;
};

using Schedule = std::variant<CyclicSchedule, RandomSchedule, ExplicitSchedule>;

struct StopRule {
  double residual_tol = 1e-8;
  long max_iters = 100000;
  /// A step moving the iterate by less than this while the residual is still
  /// above residual_tol ends the run as stalled.
  double stall_tol = 1e-14;
  /// In-flight divergence detection: see classify_norm_growth.
  int divergence_window = 50;
  double divergence_factor = 100.0;
};

struct IterationTrace {
  std::vector<Vector> iterates;
  /// Output of the first operator applied within an outer iteration (y^k in
  /// the two-set scheme). Empty for schemes without an intermediate point.
  std::vector<Vector> intermediate;
  /// Max over instances of the residual at each iterate.
  std::vector<double> residuals;
  /// Per-instance residuals at each iterate.
  std::vector<std::vector<double>> instance_residuals;

  std::size_t size() const { return iterates.size(); }
  bool empty() const { return iterates.empty(); }
};

enum class RunStatus { kConverged, kMaxIters, kDiverging, kStalled };

std::string_view status_name(RunStatus status);
std::optional<RunStatus> parse_status(std::string_view name);

struct RunResult {
  RunStatus status = RunStatus::kMaxIters;
  Vector solution;
  IterationTrace trace;
  StepSize step;

  /// Outer iterations performed.
  std::size_t iterations() const { return trace.empty() ? 0 : trace.size() - 1; }
};

}  // namespace csvip
