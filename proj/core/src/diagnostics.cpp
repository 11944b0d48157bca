#include "csvip/diagnostics.hpp"

#include <algorithm>

#include "csvip/error.hpp"

namespace csvip {

FejerReport fejer_check(const IterationTrace& trace, const Vector& z, double tol) {
  if (trace.empty()) throw Error(ErrorCode::kEmptyTrace, "Fejer check needs a nonempty trace");
  if (z.size() != trace.iterates.front().size()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference point dimension differs from trace");
  }
  FejerReport report;
  report.reference_point = z;
  double previous = (trace.iterates.front() - z).norm();
  for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
    const double next = (trace.iterates[k + 1] - z).norm();
    const double increase = next - previous;
    report.max_violation = std::max(report.max_violation, increase);
    if (increase > tol) report.violations.push_back({k, increase});
    previous = next;
  }
  return report;
}

const char* verdict_name(DivergenceVerdict verdict) {
  switch (verdict) {
    case DivergenceVerdict::kBounded: return "bounded";
    case DivergenceVerdict::kGrowing: return "growing";
    case DivergenceVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DivergenceVerdict classify_norm_growth(std::span<const double> norms, int window,
                                       double factor) {
  if (window < 1 || norms.size() < static_cast<std::size_t>(window) + 1) {
    return DivergenceVerdict::kInconclusive;
  }
  const double band = factor * (1.0 + norms.front());
  const auto tail = norms.last(static_cast<std::size_t>(window) + 1);
  bool increasing = true;
  for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
    if (!(tail[i + 1] > tail[i])) {
      increasing = false;
      break;
    }
  }
  if (increasing && tail.back() > band) return DivergenceVerdict::kGrowing;
  const bool within = std::all_of(tail.begin(), tail.end(), [&](double v) { return v <= band; });
  if (within && !increasing) return DivergenceVerdict::kBounded;
  return DivergenceVerdict::kInconclusive;
}

DivergenceStatus divergence_monitor(const IterationTrace& trace, int window, double threshold) {
  DivergenceStatus status;
  status.norm_series.reserve(trace.size());
  for (const auto& x : trace.iterates) status.norm_series.push_back(x.norm());
  status.verdict = classify_norm_growth(status.norm_series, window, threshold);
  return status;
}

std::vector<std::vector<double>> residual_series(const CsvipProblem& problem,
                                                 const IterationTrace& trace,
                                                 const StepSize& step) {
  const auto ops = problem.step_operators(step);
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.size());
  for (const auto& x : trace.iterates) {
    if (static_cast<std::size_t>(x.size()) != problem.dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "trace iterate dimension differs from problem");
    }
    std::vector<double> row;
    row.reserve(ops.size());
    for (const auto& t : ops) row.push_back(vip_residual(t, x));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace csvip
