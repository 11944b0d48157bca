#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace csvip {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class ConvexSet;

/// {x : <normal, x> <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// {x : <normal, x> = offset}
struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// {x : Ax = b}. The factorization is built once at construction and shared
/// between copies.
struct AffineSubspace {
  Matrix constraint_matrix;
  Vector rhs;
  std::shared_ptr<const Eigen::CompleteOrthogonalDecomposition<Matrix>> factor;
};

/// Unit standard simplex {x >= 0, sum x = 1}.
struct Simplex {
  std::size_t dim = 1;
};

struct WholeSpace {
  std::size_t dim = 1;
};

struct Intersection {
  std::vector<ConvexSet> members;
};

/// Tolerance and iteration cap for projections onto intersections.
struct IntersectionOptions {
  double tol = 1e-10;
  int max_iter = 100000;
};

/// A closed convex subset of R^n with an exact (or, for intersections,
/// Dykstra-iterated) metric projection. Instances are immutable and only
/// built through the validating factories below.
class ConvexSet {
 public:
  using Variant = std::variant<Halfspace, Hyperplane, Box, Ball, AffineSubspace,
                               Simplex, WholeSpace, Intersection>;

  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet hyperplane(Vector normal, double offset);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet affine_subspace(Matrix constraint_matrix, Vector rhs);
  static ConvexSet simplex(std::size_t dim);
  static ConvexSet whole_space(std::size_t dim);
  static ConvexSet intersection(std::vector<ConvexSet> members);

  std::size_t dim() const { return dim_; }
  const Variant& shape() const { return shape_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&shape_);
  }

 private:
  ConvexSet(Variant shape, std::size_t dim)
      : shape_(std::move(shape)), dim_(dim) {}

  Variant shape_;
  std::size_t dim_;
};

Vector project(const ConvexSet& set, const Vector& x);

double distance(const ConvexSet& set, const Vector& x);

bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Nearest point of the intersection of `members` to `x` by Dykstra's
/// alternating projections with correction terms. Throws kNotConverged if
/// the iteration cap is hit before every member is within `tol` and a full
/// sweep moves the iterate by at most `tol`.
Vector project_intersection(const std::vector<ConvexSet>& members,
                            const Vector& x,
                            const IntersectionOptions& options = {});

}  // namespace csvip
