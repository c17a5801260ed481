#pragma once

// Closed convex sets with exact metric projections, and moving sets
// C(x) = m(x) + C.

#include <optional>
#include <variant>

#include "sgqvi/hilbert.hpp"
#include "sgqvi/operators.hpp"

namespace sgqvi {

struct WholeSpace {};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// { x : <normal, x> <= offset }
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// { point + basis * t : t in R^k }. Columns of `basis` span the directions.
struct AffineSet {
  Matrix basis;
  Vector point;
};

/// Nonempty closed convex set. Constructors validate the descriptor.
class ConvexSet {
 public:
  using Variant = std::variant<WholeSpace, Box, Ball, Halfspace, AffineSet>;

  ConvexSet() : set_(WholeSpace{}) {}
  ConvexSet(WholeSpace w) : set_(w) {}
  ConvexSet(Box b);
  ConvexSet(Ball b);
  ConvexSet(Halfspace h);
  ConvexSet(AffineSet a);

  const Variant& set() const { return set_; }
  std::optional<Eigen::Index> dim() const;

  /// Membership with absolute slack `tol`.
  bool contains(const Vector& x, double tol = 1e-10) const;

  friend bool operator==(const ConvexSet& a, const ConvexSet& b);

 private:
  Variant set_;
};

/// The nearest point of `c` to `z`.
Vector project(const ConvexSet& c, const Vector& z);

/// C(x) = m(x) + base, with m a model whose Lipschitz constant is certified
/// at construction.
class MovingSet {
 public:
  MovingSet() = default;
  explicit MovingSet(ConvexSet base, OperatorModel translation = Zero{});

  const ConvexSet& base() const { return base_; }
  const OperatorModel& translation() const { return translation_; }
  double translation_lipschitz() const { return lipschitz_; }
  bool is_fixed() const { return translation_.is_constant(); }

  friend bool operator==(const MovingSet& a, const MovingSet& b) {
    return a.base_ == b.base_ && a.translation_ == b.translation_;
  }

 private:
  ConvexSet base_;
  OperatorModel translation_ = Zero{};
  double lipschitz_ = 0.0;
};

/// Projection of z onto C(x): m(x) + P_base(z - m(x)).
Vector project_moving(const MovingSet& m, const Vector& x, const Vector& z);

/// A constant nu with |P_C(x)(z) - P_C(y)(z)| <= nu |x - y|: 2 * Lip(m).
double certify_nu(const MovingSet& m);

}  // namespace sgqvi
