#include "csvip/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "csvip/error.hpp"

namespace csvip {

namespace {

struct LinearRows {
  Matrix a;
  Vector b;
};

LinearRows as_rows(const ConvexSet& set) {
  if (const auto* s = set.as<AffineSubspace>()) return {s->constraint_matrix, s->rhs};
  if (const auto* h = set.as<Hyperplane>()) {
    return {h->normal.transpose(), Vector::Constant(1, h->offset)};
  }
  if (set.as<WholeSpace>() != nullptr) {
    return {Matrix(0, static_cast<Eigen::Index>(set.dim())), Vector(0)};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "subspace oracle accepts affine subspaces, hyperplanes and the whole space");
}

double unit_step(const IsmOperator& op) { return std::isinf(op.alpha()) ? 1.0 : op.alpha(); }

}  // namespace

std::string_view oracle_method_name(OracleMethod method) {
  switch (method) {
    case OracleMethod::kExtragradient: return "extragradient";
    case OracleMethod::kAnalyticSubspace: return "analytic_subspace";
    case OracleMethod::kGrid: return "grid";
  }
  return "unknown";
}

OracleResult extragradient_solve(const Instance& instance, double lambda, const Vector& x0,
                                 double tol, long max_iter) {
  if (!(lambda > 0.0) || !(lambda < instance.op.alpha())) {
    throw Error(ErrorCode::kStepOutOfRange,
                "extragradient step must lie in (0, alpha), got " + std::to_string(lambda));
  }
  if (static_cast<std::size_t>(x0.size()) != instance.set.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "starting point dimension differs from instance");
  }
  const StepOperator residual_map(instance.set, instance.op, StepSize{lambda, instance.op.alpha()});
  const auto& set = instance.set;
  const auto& op = instance.op;

  Vector x = x0;
  double residual = vip_residual(residual_map, x);
  long iter = 0;
  while (residual > tol) {
    if (iter >= max_iter) {
      throw Error(ErrorCode::kNotConverged,
                  "extragradient did not reach tolerance within " + std::to_string(max_iter) +
                      " iterations (residual " + std::to_string(residual) + ")");
    }
    const Vector y = project(set, x - lambda * apply(op, x));
    x = project(set, x - lambda * apply(op, y));
    residual = vip_residual(residual_map, x);
    ++iter;
  }
  return OracleResult{x, residual, OracleMethod::kExtragradient, iter};
}

OracleResult subspace_intersection_projection(const ConvexSet& a1, const ConvexSet& a2,
                                              const Vector& x) {
  if (a1.dim() != a2.dim() || static_cast<std::size_t>(x.size()) != a1.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "subspace oracle inputs differ in dimension");
  }
  const LinearRows r1 = as_rows(a1);
  const LinearRows r2 = as_rows(a2);
  const Eigen::Index n = x.size();
  Matrix a(r1.a.rows() + r2.a.rows(), n);
  Vector b(r1.b.size() + r2.b.size());
  a << r1.a, r2.a;
  b << r1.b, r2.b;
  if (a.rows() == 0) return OracleResult{x, 0.0, OracleMethod::kAnalyticSubspace, 0};

  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  const Vector particular = cod.solve(b);
  if ((a * particular - b).norm() > 1e-9 * (1.0 + b.norm())) {
    throw Error(ErrorCode::kInconsistentSystem, "subspaces do not intersect");
  }
  const Vector point = x - cod.solve(a * x - b);
  const double certified = std::max(distance(a1, point), distance(a2, point));
  return OracleResult{point, certified, OracleMethod::kAnalyticSubspace, 0};
}

OracleResult grid_search_vip(const Instance& instance, const Box& bounds, double resolution) {
  const std::size_t dim = instance.set.dim();
  if (dim > 3) throw Error(ErrorCode::kGridDimension, "grid oracle supports dimension <= 3");
  if (static_cast<std::size_t>(bounds.lower.size()) != dim ||
      static_cast<std::size_t>(bounds.upper.size()) != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "grid bounds dimension differs from instance");
  }
  if (!(resolution > 0.0)) throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");

  std::vector<long> counts(dim);
  double total = 1.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double span = bounds.upper[d] - bounds.lower[d];
    if (!(span >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid bounds are inverted");
    counts[d] = static_cast<long>(std::floor(span / resolution + 1e-9)) + 1;
    total *= static_cast<double>(counts[d]);
  }
  if (total > 5e7) throw Error(ErrorCode::kInvalidArgument, "grid too fine for brute force");

  const StepOperator t(instance.set, instance.op,
                       StepSize{unit_step(instance.op), instance.op.alpha()});
  std::vector<long> index(dim, 0);
  Vector point(static_cast<Eigen::Index>(dim));
  Vector best;
  double best_residual = std::numeric_limits<double>::infinity();
  // Odometer with the first coordinate most significant, so points are
  // visited in lexicographic order and strict improvement keeps the
  // lexicographically smallest minimizer.
  while (true) {
    for (std::size_t d = 0; d < dim; ++d) {
      point[static_cast<Eigen::Index>(d)] =
          bounds.lower[d] + static_cast<double>(index[d]) * resolution;
    }
    if (contains(instance.set, point, 1e-12)) {
      const double r = vip_residual(t, point);
      if (r < best_residual) {
        best_residual = r;
        best = point;
      }
    }
    bool exhausted = true;
    for (std::size_t d = dim; d-- > 0;) {
      if (++index[d] < counts[d]) {
        exhausted = false;
        break;
      }
      index[d] = 0;
    }
    if (exhausted) break;
  }
  if (best.size() == 0) {
    throw Error(ErrorCode::kGridEmpty, "no grid point lies inside the set");
  }
  return OracleResult{best, best_residual, OracleMethod::kGrid, 0};
}

}  // namespace csvip
