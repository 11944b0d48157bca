#pragma once

#include <optional>

#include "csvip/problem.hpp"

namespace csvip {

/// lambda = min_i alpha_i unless the caller supplies one; validated against
/// (0, 2 min_i alpha_i).
StepSize default_step(const CsvipProblem& problem, std::optional<double> lambda = std::nullopt);

/// The zero vector of the problem's dimension.
Vector default_start(const CsvipProblem& problem);

/// Two-set scheme: y^k = T_1(x^k), x^{k+1} = T_0(y^k), T_i = P_{C_i}(I - lambda f_i).
RunResult solve_alternating(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                            const StopRule& stop = {});

/// x^{k+1} = T_0 T_1 ... T_{N-1} x^k (instance N-1 applied first).
RunResult solve_sequential(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                           const StopRule& stop = {});

/// x^{k+1} = sum_i w_i T_i x^k, summed in index order.
RunResult solve_parallel(const CsvipProblem& problem, const StepSize& step, const Vector& x0,
                         const StopRule& stop = {});

/// x^{k+1} = T_{r(k)} x^k with r drawn from the schedule.
RunResult solve_unrestricted(const CsvipProblem& problem, const Schedule& schedule,
                             const StepSize& step, const Vector& x0, const StopRule& stop = {});

}  // namespace csvip
