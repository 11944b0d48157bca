#pragma once

// Random fixtures shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "csvip/geometry.hpp"
#include "csvip/operators.hpp"
#include "csvip/problem.hpp"

namespace csvip::testing {

using Rng = std::mt19937_64;

inline Vector random_vector(Rng& rng, Eigen::Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline Vector unit_vector(Rng& rng, Eigen::Index n) {
  Vector v = gaussian_vector(rng, n);
  return v / v.norm();
}

/// M = s * B^T B + mu * I + K with K skew, so (M + M^T)/2 >= mu * I.
inline Matrix monotone_matrix(Rng& rng, Eigen::Index n, double mu, double skew) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  const Matrix b = gaussian_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
  const Matrix k = gaussian_matrix(rng, n, n) * skew;
  return u(rng) * b.transpose() * b + mu * Matrix::Identity(n, n) + 0.5 * (k - k.transpose());
}

/// Draws a point of `set` (bounded families sample the interior/boundary,
/// unbounded ones a neighbourhood of a reference point).
inline Vector sample_in_set(const ConvexSet& set, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(set.dim());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (const auto* b = set.as<Box>()) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = b->lower[i] + u(rng) * (b->upper[i] - b->lower[i]);
    return v;
  }
  if (const auto* b = set.as<Ball>()) {
    return b->center + b->radius * std::pow(u(rng), 1.0 / static_cast<double>(n)) *
                           unit_vector(rng, n);
  }
  if (set.as<Simplex>() != nullptr) {
    std::exponential_distribution<double> e(1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = e(rng);
    return v / v.sum();
  }
  // Halfspace, hyperplane, affine subspace, whole space, intersection:
  // project a random point, which lands in the set.
  return project(set, random_vector(rng, n, -5.0, 5.0));
}

inline std::vector<std::pair<Vector, Vector>> random_pairs(Rng& rng, Eigen::Index n,
                                                           std::size_t count, double scale) {
  std::vector<std::pair<Vector, Vector>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(random_vector(rng, n, -scale, scale), random_vector(rng, n, -scale, scale));
  }
  return out;
}

/// One representative of every set family in dimension n.
inline std::vector<std::pair<std::string, ConvexSet>> set_catalogue(Rng& rng, Eigen::Index n) {
  std::vector<std::pair<std::string, ConvexSet>> out;
  const Vector lo = random_vector(rng, n, -2.0, 0.0);
  out.emplace_back("halfspace", ConvexSet::halfspace(gaussian_vector(rng, n), 0.3));
  out.emplace_back("hyperplane", ConvexSet::hyperplane(gaussian_vector(rng, n), -0.4));
  out.emplace_back("box", ConvexSet::box(lo, lo + random_vector(rng, n, 0.5, 2.0)));
  out.emplace_back("ball", ConvexSet::ball(random_vector(rng, n), 1.3));
  const Eigen::Index rows = std::max<Eigen::Index>(1, n / 2);
  const Matrix a = gaussian_matrix(rng, rows, n);
  out.emplace_back("affine_subspace", ConvexSet::affine_subspace(a, a * random_vector(rng, n)));
  out.emplace_back("simplex", ConvexSet::simplex(static_cast<std::size_t>(n)));
  out.emplace_back("whole_space", ConvexSet::whole_space(static_cast<std::size_t>(n)));
  out.emplace_back("intersection",
                   ConvexSet::intersection({ConvexSet::ball(Vector::Zero(n), 1.5),
                                            ConvexSet::halfspace(Vector::Ones(n), 0.5)}));
  return out;
}

/// A two-set instance with a known common solution `solution`.
struct KnownInstance {
  CsvipProblem problem;
  Vector solution;
  std::string description;
};

/// Builds a set of a random family that contains p. When `normal` is set,
/// p lies on the boundary with `normal` as outward normal.
inline ConvexSet set_through(Rng& rng, const Vector& p, const Vector* normal, int family) {
  const Eigen::Index n = p.size();
  std::uniform_real_distribution<double> u(0.3, 2.0);
  switch (family % 3) {
    case 0: {
      if (normal) return ConvexSet::halfspace(*normal, normal->dot(p));
      const Vector a = unit_vector(rng, n);
      return ConvexSet::halfspace(a, a.dot(p) + u(rng) - 0.3);
    }
    case 1: {
      const double r = u(rng);
      if (normal) return ConvexSet::ball(p - r * *normal, r);
      return ConvexSet::ball(p + 0.5 * r * unit_vector(rng, n), r);
    }
    default: {
      Vector lo = p - random_vector(rng, n, 0.0, 1.5);
      Vector hi = p + random_vector(rng, n, 0.0, 1.5);
      if (normal) {
        // Boxes only have coordinate normals; pin p to the upper face in the
        // coordinate `normal` points along.
        Eigen::Index j = 0;
        normal->cwiseAbs().maxCoeff(&j);
        if ((*normal)[j] > 0) hi[j] = p[j]; else lo[j] = p[j];
      }
      return ConvexSet::box(lo, hi);
    }
  }
}

/// Two sets sharing a point p and two strongly monotone affine operators
/// with p in both solution sets. Half the instances make the constraint at p
/// active (h_i(p) = -t_i a with a an outward normal common to both sets).
inline KnownInstance random_known_instance(Rng& rng, Eigen::Index n, bool active,
                                           double mu_lo = 0.2, double mu_hi = 1.0,
                                           double skew = 0.5) {
  std::uniform_int_distribution<int> family(0, 2);
  std::uniform_real_distribution<double> mu(mu_lo, mu_hi);
  std::uniform_real_distribution<double> pull(0.2, 1.5);
  const Vector p = random_vector(rng, n, -2.0, 2.0);

  Vector normal = unit_vector(rng, n);
  int f0 = family(rng);
  int f1 = family(rng);
  if (active) {
    // Box faces need a coordinate normal shared by both sets.
    if (f0 == 2 || f1 == 2) {
      Eigen::Index j = 0;
      normal.cwiseAbs().maxCoeff(&j);
      const double sign = normal[j] > 0 ? 1.0 : -1.0;
      normal.setZero();
      normal[j] = sign;
    }
  }
  const Vector* pinned = active ? &normal : nullptr;
  std::vector<Instance> instances;
  for (int f : {f0, f1}) {
    ConvexSet set = set_through(rng, p, pinned, f);
    const Matrix m = monotone_matrix(rng, n, mu(rng), skew);
    Vector shift = -m * p;
    if (active) shift -= pull(rng) * normal;
    instances.push_back(Instance{std::move(set), IsmOperator::affine(m, shift)});
  }
  const char* names[] = {"halfspace", "ball", "box"};
  std::string description = std::string(active ? "active " : "interior ") + names[f0 % 3] +
                            "/" + names[f1 % 3] + " n=" + std::to_string(n);
  return KnownInstance{CsvipProblem(std::move(instances)), p, description};
}

/// Random d-dimensional affine subspace of R^n through q, as {x : A x = A q}.
inline ConvexSet random_subspace_through(Rng& rng, Eigen::Index n, Eigen::Index d,
                                         const Vector& q) {
  const Matrix a = gaussian_matrix(rng, n - d, n);
  return ConvexSet::affine_subspace(a, a * q);
}

}  // namespace csvip::testing
