#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "csvip/problem.hpp"

namespace csvip {

struct FejerViolation {
  std::size_t iteration = 0;
  double magnitude = 0.0;
};

struct FejerReport {
  Vector reference_point;
  std::vector<FejerViolation> violations;
  double max_violation = 0.0;
};

/// Reports every k with |x^{k+1} - z| - |x^k - z| > tol. max_violation is
/// the largest increase of the distance to z over the trace, floored at 0.
FejerReport fejer_check(const IterationTrace& trace, const Vector& z, double tol = 1e-12);

enum class DivergenceVerdict { kBounded, kGrowing, kInconclusive };

const char* verdict_name(DivergenceVerdict verdict);

struct DivergenceStatus {
  DivergenceVerdict verdict = DivergenceVerdict::kInconclusive;
  std::vector<double> norm_series;
};

/// Three-valued growth classification of a norm series.
///   growing:  the last `window` steps strictly increase the norm and the
///             final norm exceeds factor * (1 + norms[0]).
///   bounded:  every norm in the trailing window is at most
///             factor * (1 + norms[0]) and the window is not strictly
///             increasing.
///   otherwise (or fewer than window + 1 norms) inconclusive.
DivergenceVerdict classify_norm_growth(std::span<const double> norms, int window,
                                       double factor);

DivergenceStatus divergence_monitor(const IterationTrace& trace, int window = 50,
                                    double threshold = 100.0);

/// Row k holds vip_residual(T_i, x^k) for every instance i.
std::vector<std::vector<double>> residual_series(const CsvipProblem& problem,
                                                 const IterationTrace& trace,
                                                 const StepSize& step);

}  // namespace csvip
