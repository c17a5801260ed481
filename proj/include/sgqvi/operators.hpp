#pragma once

// Structured nonlinear-map models f, g, m with certifiable constants.
//
// Every model here has an affine form x -> L x + q, so its monotonicity and
// Lipschitz constants can be computed exactly from spectra instead of being
// assumed.

#include <functional>
#include <optional>
#include <variant>

#include "sgqvi/hilbert.hpp"

namespace sgqvi {

struct Affine {
  Matrix matrix;
  Vector offset;
};

struct Scaling {
  double s = 1.0;
};

struct Translation {
  Vector c;
};

struct Zero {};

/// Strong monotonicity (alpha) and Lipschitz (beta) constants. A positive
/// alpha never exceeds the true value and beta never undercuts it. alpha == 0
/// means no strong monotonicity could be certified.
struct Constants {
  double alpha = 0.0;
  double beta = 0.0;
};

class OperatorModel {
 public:
  using Variant = std::variant<Affine, Scaling, Translation, Zero>;

  OperatorModel() : model_(Zero{}) {}
  OperatorModel(Affine a);
  OperatorModel(Scaling s);
  OperatorModel(Translation t);
  OperatorModel(Zero z) : model_(z) {}

  static OperatorModel identity() { return OperatorModel(Scaling{1.0}); }

  const Variant& model() const { return model_; }

  /// Intrinsic dimension, or nullopt for dimension-agnostic models.
  std::optional<Eigen::Index> dim() const;

  Vector evaluate(const Vector& x) const;

  /// The matrix L of x -> L x + q at dimension n.
  Matrix linear_part(Eigen::Index n) const;
  /// The constant q at dimension n.
  Vector offset(Eigen::Index n) const;

  /// True when evaluate(x) == x for every x.
  bool is_identity() const;
  /// True when evaluate is constant (zero linear part).
  bool is_constant() const;

  friend bool operator==(const OperatorModel& a, const OperatorModel& b);

 private:
  Variant model_;
};

Vector evaluate(const OperatorModel& op, const Vector& x);

/// alpha = smallest eigenvalue of the symmetric part clamped at 0,
/// beta = largest singular value of the linear part.
/// Affine with a non-square matrix throws std::invalid_argument.
Constants certify_constants(const OperatorModel& op);

/// Lipschitz constant only; defined for any model.
double lipschitz_constant(const OperatorModel& op);

/// The inner map g of the scheme, with sigma certified for g - I and delta
/// for g itself.
class GMap {
 public:
  GMap() : GMap(OperatorModel::identity()) {}
  explicit GMap(OperatorModel inner);

  const OperatorModel& inner() const { return inner_; }
  double sigma() const { return sigma_; }
  double delta() const { return delta_; }
  bool is_identity() const { return identity_; }

  Vector evaluate(const Vector& x) const;

  friend bool operator==(const GMap& a, const GMap& b) {
    return a.inner_ == b.inner_;
  }

 private:
  OperatorModel inner_;
  double sigma_ = 0.0;
  double delta_ = 1.0;
  bool identity_ = true;
};

/// Largest valid alpha_rel with <f(x)-f(y), g(x)-g(y)> >= alpha_rel |x-y|^2,
/// i.e. the smallest eigenvalue of sym(D_gᵀ M_f) clamped at 0. `n` fixes the
/// dimension for dimension-agnostic models.
double certify_relative(const OperatorModel& f, const GMap& g, Eigen::Index n);

/// Solves g(y) = target. Exact for every supported model.
/// Throws SingularOperatorError when the linear part of g is singular.
Vector invert_g(const GMap& g, const Vector& target);

/// Damped fixed-point solve of map(y) = target for a `strong_monotonicity`-
/// strongly monotone, `lipschitz`-Lipschitz map. Iterates
/// y <- y - (mu / L^2)(map(y) - target) until |map(y) - target| <= tol.
/// Throws NoConvergenceError after `max_iters` steps.
Vector solve_monotone_equation(const std::function<Vector(const Vector&)>& map,
                               const Vector& target, double strong_monotonicity,
                               double lipschitz, double tol = 1e-12,
                               int max_iters = 10'000);

}  // namespace sgqvi
