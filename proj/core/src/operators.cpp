#include "csvip/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csvip/error.hpp"

namespace csvip {

namespace {

void require_dim(std::size_t expected, const Vector& x, const char* what) {
  if (static_cast<std::size_t>(x.size()) != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(x.size()));
  }
}

double smallest_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double largest_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double affine_ism_constant(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  const Matrix gram = m.transpose() * m;
  const double gram_norm = largest_eigenvalue(gram);
  if (gram_norm == 0.0) return kUnboundedAlpha;

  const double sym_norm = sym.cwiseAbs().rowwise().sum().maxCoeff();
  if (smallest_eigenvalue(sym) < -1e-12 * std::max(sym_norm, 1.0)) {
    throw Error(ErrorCode::kNotIsm,
                "operator is not inverse strongly monotone: symmetric part is indefinite");
  }

  // Feasible beta satisfy sym - beta * gram >= 0 (up to roundoff), a
  // downward-closed interval bounded above by 1 / sigma_max(M).
  auto feasible = [&](double beta) {
    const double slack = 1e-13 * (sym_norm + beta * gram_norm);
    return smallest_eigenvalue(sym - beta * gram) >= -slack;
  };

  double hi = 1.0 / std::sqrt(gram_norm);
  if (feasible(hi)) return hi;
  double lo = 0.0;
  for (int iter = 0; iter < 400 && hi - lo > 1e-10 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::kNotIsm,
                "operator is not inverse strongly monotone for any positive constant");
  }
  return lo;
}

}  // namespace

IsmOperator IsmOperator::zero(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidOperator, "operator dimension must be positive");
  return IsmOperator(ZeroMap{dim}, dim, kUnboundedAlpha, true);
}

IsmOperator IsmOperator::constant(Vector value) {
  if (value.size() == 0 || !value.allFinite()) {
    throw Error(ErrorCode::kInvalidOperator, "constant operator needs finite nonempty value");
  }
  const auto n = static_cast<std::size_t>(value.size());
  return IsmOperator(ConstantMap{std::move(value)}, n, kUnboundedAlpha, true);
}

IsmOperator IsmOperator::affine(Matrix matrix, Vector shift,
                                std::optional<double> claimed_alpha) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kInvalidOperator, "affine operator needs a square nonempty matrix");
  }
  if (shift.size() != matrix.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "affine shift length differs from matrix size");
  }
  if (!matrix.allFinite() || !shift.allFinite()) {
    throw Error(ErrorCode::kInvalidOperator, "affine operator has non-finite entries");
  }
  const double certified = affine_ism_constant(matrix);
  if (claimed_alpha) {
    if (!(*claimed_alpha > 0.0)) {
      throw Error(ErrorCode::kInvalidOperator, "claimed alpha must be positive");
    }
    if (*claimed_alpha > certified + 1e-9) {
      throw Error(ErrorCode::kNotIsm,
                  "claimed alpha " + std::to_string(*claimed_alpha) +
                      " exceeds certified ism constant " + std::to_string(certified));
    }
  }
  const auto n = static_cast<std::size_t>(matrix.rows());
  return IsmOperator(AffineMap{std::move(matrix), std::move(shift)}, n, certified, true);
}

IsmOperator IsmOperator::custom(std::size_t dim, std::function<Vector(const Vector&)> fn,
                                double asserted_alpha) {
  if (dim == 0 || !fn) {
    throw Error(ErrorCode::kInvalidOperator, "custom operator needs a dimension and a callable");
  }
  if (!(asserted_alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidOperator, "asserted alpha must be positive");
  }
  return IsmOperator(CustomMap{dim, std::move(fn)}, dim, asserted_alpha, false);
}

Vector apply(const IsmOperator& op, const Vector& x) {
  require_dim(op.dim(), x, "operator argument");
  struct Visitor {
    const Vector& x;
    Vector operator()(const ZeroMap& z) const { return Vector::Zero(static_cast<Eigen::Index>(z.dim)); }
    Vector operator()(const ConstantMap& c) const { return c.value; }
    Vector operator()(const AffineMap& a) const { return a.matrix * x + a.shift; }
    Vector operator()(const CustomMap& c) const {
      Vector out = c.fn(x);
      if (static_cast<std::size_t>(out.size()) != c.dim) {
        throw Error(ErrorCode::kDimensionMismatch, "custom operator returned wrong dimension");
      }
      return out;
    }
  };
  return std::visit(Visitor{x}, op.map());
}

double estimate_ism_constant(const IsmOperator& op) {
  if (const auto* a = std::get_if<AffineMap>(&op.map())) {
    return affine_ism_constant(a->matrix);
  }
  if (std::holds_alternative<CustomMap>(op.map())) return op.alpha();
  return kUnboundedAlpha;
}

StepSize validate_step(std::optional<double> lambda, std::span<const double> alphas) {
  if (alphas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "step validation needs at least one alpha");
  }
  double bound = kUnboundedAlpha;
  for (double a : alphas) {
    if (!(a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ism constants must be positive");
    bound = std::min(bound, a);
  }
  if (!lambda) {
    if (std::isinf(bound)) {
      throw Error(ErrorCode::kNoDefaultStep,
                  "all operators have unbounded ism constants; a step size must be supplied");
    }
    return StepSize{bound, bound};
  }
  const double l = *lambda;
  if (!(l > 0.0) || !std::isfinite(l) || !(l < 2.0 * bound)) {
    throw Error(ErrorCode::kStepOutOfRange,
                "step " + std::to_string(l) + " outside (0, 2*alpha) with alpha = " +
                    std::to_string(bound));
  }
  return StepSize{l, bound};
}

Vector forward_step(const IsmOperator& op, const StepSize& step, const Vector& x) {
  if (std::holds_alternative<ZeroMap>(op.map())) {
    require_dim(op.dim(), x, "operator argument");
    return x;
  }
  return x - step.lambda * apply(op, x);
}

StepOperator::StepOperator(ConvexSet set, IsmOperator op, StepSize step)
    : set_(std::move(set)), op_(std::move(op)), step_(step) {
  if (set_.dim() != op_.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "set and operator dimensions differ");
  }
  if (!(step_.lambda > 0.0) || !(step_.lambda < 2.0 * op_.alpha())) {
    throw Error(ErrorCode::kStepOutOfRange,
                "step " + std::to_string(step_.lambda) +
                    " not admissible for operator with alpha " + std::to_string(op_.alpha()));
  }
}

Vector StepOperator::operator()(const Vector& x) const {
  return project(set_, forward_step(op_, step_, x));
}

Vector step_operator_apply(const StepOperator& t, const Vector& x) { return t(x); }

double vip_residual(const StepOperator& t, const Vector& x) { return (x - t(x)).norm(); }

OperatorClassReport check_operator_class(
    const StepOperator& t, std::span<const std::pair<Vector, Vector>> sample_pairs) {
  OperatorClassReport report;
  report.certified = t.op().certified();
  report.rows.reserve(sample_pairs.size());
  for (const auto& [x, y] : sample_pairs) {
    const Vector tx = t(x);
    const Vector ty = t(y);
    OperatorClassRow row;
    row.nonexpansive_margin = (x - y).norm() - (tx - ty).norm();
    const Vector dg = (x - tx) - (y - ty);
    const double denom = dg.squaredNorm();
    if (denom > 1e-12) {
      row.complement_ratio = dg.dot(x - y) / denom;
      report.min_ratio = std::min(report.min_ratio, *row.complement_ratio);
    }
    report.min_margin = std::min(report.min_margin, row.nonexpansive_margin);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace csvip
