#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "csvip/geometry.hpp"

namespace csvip {

/// Sentinel ism constant for operators that satisfy the ism inequality for
/// every positive constant (zero and constant maps).
inline constexpr double kUnboundedAlpha = std::numeric_limits<double>::infinity();

struct ZeroMap {
  std::size_t dim = 1;
};

struct ConstantMap {
  Vector value;
};

/// h(x) = Mx + c
struct AffineMap {
  Matrix matrix;
  Vector shift;
};

/// User-supplied map with an asserted, uncertified ism constant.
struct CustomMap {
  std::size_t dim = 1;
  std::function<Vector(const Vector&)> fn;
};

/// A single-valued inverse strongly monotone operator h together with its ism
/// constant alpha: <h(x)-h(y), x-y> >= alpha * |h(x)-h(y)|^2.
class IsmOperator {
 public:
  using Variant = std::variant<ZeroMap, ConstantMap, AffineMap, CustomMap>;

  static IsmOperator zero(std::size_t dim);
  static IsmOperator constant(Vector value);
  /// Certifies alpha from the matrix. A caller-supplied alpha is only checked:
  /// it is rejected (kNotIsm) if it exceeds the certified value by more than 1e-9.
  static IsmOperator affine(Matrix matrix, Vector shift,
                            std::optional<double> claimed_alpha = std::nullopt);
  static IsmOperator custom(std::size_t dim, std::function<Vector(const Vector&)> fn,
                            double asserted_alpha);

  std::size_t dim() const { return dim_; }
  double alpha() const { return alpha_; }
  bool certified() const { return certified_; }
  const Variant& map() const { return map_; }

 private:
  IsmOperator(Variant map, std::size_t dim, double alpha, bool certified)
      : map_(std::move(map)), dim_(dim), alpha_(alpha), certified_(certified) {}

  Variant map_;
  std::size_t dim_;
  double alpha_;
  bool certified_;
};

Vector apply(const IsmOperator& op, const Vector& x);

/// Largest beta with (M+M^T)/2 - beta*M^T M positive semidefinite, found by
/// bisection on the smallest eigenvalue to relative precision 1e-10.
/// kUnboundedAlpha for zero/constant maps (and for M = 0). Throws kNotIsm when
/// no positive beta exists; custom maps return their asserted constant.
double estimate_ism_constant(const IsmOperator& op);

/// Step size lambda in (0, 2*alpha_bound).
struct StepSize {
  double lambda = 1.0;
  double alpha_bound = kUnboundedAlpha;
};

/// alpha_bound = min(alphas). Without a lambda the default is lambda =
/// alpha_bound, which needs at least one finite alpha.
StepSize validate_step(std::optional<double> lambda, std::span<const double> alphas);

Vector forward_step(const IsmOperator& op, const StepSize& step, const Vector& x);

/// The projected forward step T = P_D(I - lambda h). Fixed points of T are
/// exactly the solutions of VI(D, h).
class StepOperator {
 public:
  StepOperator(ConvexSet set, IsmOperator op, StepSize step);

  const ConvexSet& set() const { return set_; }
  const IsmOperator& op() const { return op_; }
  const StepSize& step() const { return step_; }
  std::size_t dim() const { return set_.dim(); }

  Vector operator()(const Vector& x) const;

 private:
  ConvexSet set_;
  IsmOperator op_;
  StepSize step_;
};

Vector step_operator_apply(const StepOperator& t, const Vector& x);

/// |x - T(x)|, zero exactly on the solution set of the variational inequality.
double vip_residual(const StepOperator& t, const Vector& x);

struct OperatorClassRow {
  double nonexpansive_margin = 0.0;
  /// <G(x)-G(y), x-y> / |G(x)-G(y)|^2 with G = I - T; empty when the
  /// denominator is at most 1e-12.
  std::optional<double> complement_ratio;
};

struct OperatorClassReport {
  std::vector<OperatorClassRow> rows;
  double min_margin = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  bool certified = true;

  bool nonexpansive() const { return min_margin >= -1e-10; }
  bool complement_ism_above_half() const { return min_ratio > 0.5 - 1e-8; }
};

OperatorClassReport check_operator_class(
    const StepOperator& t, std::span<const std::pair<Vector, Vector>> sample_pairs);

}  // namespace csvip
