#include "csvip/problem.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "csvip/error.hpp"

namespace csvip {

CsvipProblem::CsvipProblem(std::vector<Instance> instances,
                           std::optional<std::vector<double>> weights)
    : instances_(std::move(instances)), dim_(0), weights_(std::move(weights)) {
  if (instances_.empty()) {
    throw Error(ErrorCode::kInstanceCount, "problem needs at least one instance");
  }
  dim_ = instances_.front().set.dim();
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& inst = instances_[i];
    if (inst.set.dim() != dim_ || inst.op.dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "instance " + std::to_string(i) + " does not match problem dimension " +
                      std::to_string(dim_));
    }
  }
  if (weights_) {
    if (weights_->size() != instances_.size()) {
      throw Error(ErrorCode::kInvalidWeights, "weights must have one entry per instance");
    }
    double total = 0.0;
    for (double w : *weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::kInvalidWeights, "weights must be nonnegative and finite");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidWeights, "weights must sum to 1");
    }
  }
}

std::vector<double> CsvipProblem::effective_weights() const {
  if (weights_) return *weights_;
  return std::vector<double>(instances_.size(), 1.0 / static_cast<double>(instances_.size()));
}

std::vector<double> CsvipProblem::alphas() const {
  std::vector<double> out;
  out.reserve(instances_.size());
  for (const auto& inst : instances_) out.push_back(inst.op.alpha());
  return out;
}

std::vector<StepOperator> CsvipProblem::step_operators(const StepSize& step) const {
  std::vector<StepOperator> out;
  out.reserve(instances_.size());
  for (const auto& inst : instances_) out.emplace_back(inst.set, inst.op, step);
  return out;
}

std::string_view status_name(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIters: return "max_iters";
    case RunStatus::kDiverging: return "diverging";
    case RunStatus::kStalled: return "stalled";
  }
  return "unknown";
}

std::optional<RunStatus> parse_status(std::string_view name) {
  for (auto s : {RunStatus::kConverged, RunStatus::kMaxIters, RunStatus::kDiverging,
                 RunStatus::kStalled}) {
    if (status_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace csvip
