#include "csvip/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "csvip/error.hpp"

namespace csvip {

namespace {

void require_finite(const Vector& v, const char* what) {
  if (v.size() == 0) {
    throw Error(ErrorCode::kInvalidSet, std::string(what) + " must be nonempty");
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::kInvalidSet, std::string(what) + " has non-finite entries");
  }
}

void require_dim(const ConvexSet& set, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != set.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has dimension " + std::to_string(x.size()) +
                    ", set has dimension " + std::to_string(set.dim()));
  }
}

Vector project_simplex(const Vector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).max(0.0).matrix();
}

}  // namespace

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  require_finite(normal, "halfspace normal");
  if (normal.norm() == 0.0) {
    throw Error(ErrorCode::kInvalidSet, "halfspace normal must be nonzero");
  }
  if (!std::isfinite(offset)) {
    throw Error(ErrorCode::kInvalidSet, "halfspace offset must be finite");
  }
  const auto n = static_cast<std::size_t>(normal.size());
  return ConvexSet(Halfspace{std::move(normal), offset}, n);
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset) {
  require_finite(normal, "hyperplane normal");
  if (normal.norm() == 0.0) {
    throw Error(ErrorCode::kInvalidSet, "hyperplane normal must be nonzero");
  }
  if (!std::isfinite(offset)) {
    throw Error(ErrorCode::kInvalidSet, "hyperplane offset must be finite");
  }
  const auto n = static_cast<std::size_t>(normal.size());
  return ConvexSet(Hyperplane{std::move(normal), offset}, n);
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  require_finite(lower, "box lower bound");
  require_finite(upper, "box upper bound");
  if (lower.size() != upper.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "box bounds differ in dimension");
  }
  if ((lower.array() > upper.array()).any()) {
    throw Error(ErrorCode::kInvalidSet, "box requires lower <= upper componentwise");
  }
  const auto n = static_cast<std::size_t>(lower.size());
  return ConvexSet(Box{std::move(lower), std::move(upper)}, n);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidSet, "ball radius must be positive and finite");
  }
  const auto n = static_cast<std::size_t>(center.size());
  return ConvexSet(Ball{std::move(center), radius}, n);
}

ConvexSet ConvexSet::affine_subspace(Matrix constraint_matrix, Vector rhs) {
  if (constraint_matrix.cols() == 0) {
    throw Error(ErrorCode::kInvalidSet, "affine subspace needs at least one column");
  }
  if (constraint_matrix.rows() != rhs.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "affine subspace rhs length differs from constraint row count");
  }
  if (!constraint_matrix.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::kInvalidSet, "affine subspace has non-finite entries");
  }
  const auto n = static_cast<std::size_t>(constraint_matrix.cols());
  std::shared_ptr<const Eigen::CompleteOrthogonalDecomposition<Matrix>> factor;
  if (constraint_matrix.rows() > 0) {
    auto cod = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Matrix>>(
        constraint_matrix);
    const Vector particular = cod->solve(rhs);
    const double mismatch = (constraint_matrix * particular - rhs).norm();
    if (mismatch > 1e-9 * (1.0 + rhs.norm())) {
      throw Error(ErrorCode::kInconsistentSystem,
                  "affine subspace system Ax = b has no solution");
    }
    factor = std::move(cod);
  }
  return ConvexSet(
      AffineSubspace{std::move(constraint_matrix), std::move(rhs), std::move(factor)}, n);
}

ConvexSet ConvexSet::simplex(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidSet, "simplex dimension must be positive");
  return ConvexSet(Simplex{dim}, dim);
}

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidSet, "space dimension must be positive");
  return ConvexSet(WholeSpace{dim}, dim);
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> members) {
  if (members.empty()) {
    throw Error(ErrorCode::kInvalidSet, "intersection needs at least one member");
  }
  const std::size_t n = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "intersection members differ in dimension");
    }
  }
  return ConvexSet(Intersection{std::move(members)}, n);
}

Vector project(const ConvexSet& set, const Vector& x) {
  require_dim(set, x);
  struct Visitor {
    const Vector& x;

    Vector operator()(const Halfspace& h) const {
      const double excess = h.normal.dot(x) - h.offset;
      if (excess <= 0.0) return x;
      return x - (excess / h.normal.squaredNorm()) * h.normal;
    }
    Vector operator()(const Hyperplane& h) const {
      const double excess = h.normal.dot(x) - h.offset;
      return x - (excess / h.normal.squaredNorm()) * h.normal;
    }
    Vector operator()(const Box& b) const {
      return x.cwiseMax(b.lower).cwiseMin(b.upper);
    }
    Vector operator()(const Ball& b) const {
      const Vector offset = x - b.center;
      const double r = offset.norm();
      if (r <= b.radius) return x;
      return b.center + (b.radius / r) * offset;
    }
    Vector operator()(const AffineSubspace& a) const {
      if (!a.factor) return x;
      const Vector violation = a.constraint_matrix * x - a.rhs;
      return x - a.factor->solve(violation);
    }
    Vector operator()(const Simplex&) const { return project_simplex(x); }
    Vector operator()(const WholeSpace&) const { return x; }
    Vector operator()(const Intersection& i) const {
      return project_intersection(i.members, x);
    }
  };
  return std::visit(Visitor{x}, set.shape());
}

double distance(const ConvexSet& set, const Vector& x) {
  return (x - project(set, x)).norm();
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  if (set.as<WholeSpace>() != nullptr) {
    require_dim(set, x);
    return true;
  }
  return distance(set, x) <= tol;
}

Vector project_intersection(const std::vector<ConvexSet>& members, const Vector& x,
                            const IntersectionOptions& options) {
  if (members.empty()) {
    throw Error(ErrorCode::kInvalidSet, "intersection needs at least one member");
  }
  for (const auto& m : members) require_dim(m, x);
  if (members.size() == 1) return project(members.front(), x);

  // Dykstra: one correction vector per member.
  std::vector<Vector> corrections(members.size(), Vector::Zero(x.size()));
  Vector y = x;
  for (int sweep = 0; sweep < options.max_iter; ++sweep) {
    const Vector start = y;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Vector shifted = y + corrections[i];
      y = project(members[i], shifted);
      corrections[i] = shifted - y;
    }
    if ((y - start).norm() > options.tol) continue;
    bool feasible = true;
    for (const auto& m : members) {
      if (distance(m, y) > options.tol) {
        feasible = false;
        break;
      }
    }
    if (feasible) return y;
  }
  throw Error(ErrorCode::kNotConverged,
              "intersection projection did not converge within " +
                  std::to_string(options.max_iter) + " sweeps");
}

}  // namespace csvip
