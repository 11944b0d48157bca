#pragma once

#include <string_view>

#include "csvip/problem.hpp"

namespace csvip {

// Reference solvers from algorithm families unrelated to the projection
// schemes, used to cross-check them on small instances.

enum class OracleMethod { kExtragradient, kAnalyticSubspace, kGrid };

std::string_view oracle_method_name(OracleMethod method);

struct OracleResult {
  Vector point;
  double certified_residual = 0.0;
  OracleMethod method = OracleMethod::kExtragradient;
  long iterations = 0;
};

/// Korpelevich double projection: y = P(x - lambda h(x)), x+ = P(x - lambda h(y)).
/// Requires lambda < alpha (so lambda < 1/L). Stops once vip_residual at
/// step lambda is at most tol; throws kNotConverged after max_iter steps.
OracleResult extragradient_solve(const Instance& instance, double lambda, const Vector& x0,
                                 double tol, long max_iter);

/// Exact nearest point of A1 ∩ A2 to x from the stacked constraint system.
/// Accepts affine subspaces, hyperplanes and the whole space. Throws
/// kInconsistentSystem when the intersection is empty.
OracleResult subspace_intersection_projection(const ConvexSet& a1, const ConvexSet& a2,
                                              const Vector& x);

/// Brute force over the grid lower + i*resolution inside `bounds` (dim <= 3).
/// Returns the in-set grid point with the smallest residual at step lambda =
/// alpha (or 1 for unbounded alpha); ties go to the lexicographically
/// smallest point.
OracleResult grid_search_vip(const Instance& instance, const Box& bounds, double resolution);

}  // namespace csvip
