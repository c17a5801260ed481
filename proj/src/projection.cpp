#include "sgqvi/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "sgqvi/errors.hpp"

namespace sgqvi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool vec_eq(const Vector& a, const Vector& b) {
  return a.size() == b.size() && a == b;
}

}  // namespace

ConvexSet::ConvexSet(Box b) {
  require_same_dim(b.lower.size(), b.upper.size(), "box bounds");
  require_finite(b.lower, "box lower");
  require_finite(b.upper, "box upper");
  if ((b.lower.array() > b.upper.array()).any()) {
    throw std::invalid_argument("box: lower > upper in some coordinate");
  }
  set_ = std::move(b);
}

ConvexSet::ConvexSet(Ball b) {
  require_finite(b.center, "ball center");
  if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
    throw std::invalid_argument("ball: radius must be positive and finite");
  }
  set_ = std::move(b);
}

ConvexSet::ConvexSet(Halfspace h) {
  require_finite(h.normal, "halfspace normal");
  if (!std::isfinite(h.offset)) {
    throw std::invalid_argument("halfspace: non-finite offset");
  }
  if (h.normal.squaredNorm() == 0.0) {
    throw std::invalid_argument("halfspace: zero normal");
  }
  set_ = std::move(h);
}

ConvexSet::ConvexSet(AffineSet a) {
  require_finite(a.point, "affine set point");
  require_finite(a.basis, "affine set basis");
  if (a.basis.cols() > 0) {
    require_same_dim(a.basis.rows(), a.point.size(), "affine set basis");
  }
  set_ = std::move(a);
}

std::optional<Eigen::Index> ConvexSet::dim() const {
  return std::visit(overloaded{
                        [](const WholeSpace&) -> std::optional<Eigen::Index> {
                          return std::nullopt;
                        },
                        [](const Box& b) -> std::optional<Eigen::Index> {
                          return b.lower.size();
                        },
                        [](const Ball& b) -> std::optional<Eigen::Index> {
                          return b.center.size();
                        },
                        [](const Halfspace& h) -> std::optional<Eigen::Index> {
                          return h.normal.size();
                        },
                        [](const AffineSet& a) -> std::optional<Eigen::Index> {
                          return a.point.size();
                        },
                    },
                    set_);
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  if (const auto n = dim()) require_same_dim(x.size(), *n, "contains");
  return std::visit(
      overloaded{
          [](const WholeSpace&) { return true; },
          [&](const Box& b) {
            return ((x - b.lower).array() >= -tol).all() &&
                   ((b.upper - x).array() >= -tol).all();
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
          [&](const Halfspace& h) {
            return (h.normal.dot(x) - h.offset) / h.normal.norm() <= tol;
          },
          [&](const AffineSet& a) {
            return (project(ConvexSet(a), x) - x).norm() <= tol;
          },
      },
      set_);
}

bool operator==(const ConvexSet& a, const ConvexSet& b) {
  if (a.set_.index() != b.set_.index()) return false;
  return std::visit(
      overloaded{
          [](const WholeSpace&) { return true; },
          [&](const Box& x) {
            const auto& y = std::get<Box>(b.set_);
            return vec_eq(x.lower, y.lower) && vec_eq(x.upper, y.upper);
          },
          [&](const Ball& x) {
            const auto& y = std::get<Ball>(b.set_);
            return vec_eq(x.center, y.center) && x.radius == y.radius;
          },
          [&](const Halfspace& x) {
            const auto& y = std::get<Halfspace>(b.set_);
            return vec_eq(x.normal, y.normal) && x.offset == y.offset;
          },
          [&](const AffineSet& x) {
            const auto& y = std::get<AffineSet>(b.set_);
            return x.basis.rows() == y.basis.rows() &&
                   x.basis.cols() == y.basis.cols() && x.basis == y.basis &&
                   vec_eq(x.point, y.point);
          },
      },
      a.set_);
}

Vector project(const ConvexSet& c, const Vector& z) {
  if (const auto n = c.dim()) require_same_dim(z.size(), *n, "project");
  return std::visit(
      overloaded{
          [&](const WholeSpace&) -> Vector { return z; },
          [&](const Box& b) -> Vector {
            return z.cwiseMax(b.lower).cwiseMin(b.upper);
          },
          [&](const Ball& b) -> Vector {
            const Vector d = z - b.center;
            const double dn = d.norm();
            if (dn <= b.radius) return z;
            return b.center + (b.radius / dn) * d;
          },
          [&](const Halfspace& h) -> Vector {
            const double excess = h.normal.dot(z) - h.offset;
            if (excess <= 0.0) return z;
            return z - (excess / h.normal.squaredNorm()) * h.normal;
          },
          [&](const AffineSet& a) -> Vector {
            if (a.basis.cols() == 0) return a.point;
            // Orthonormal basis of the direction space.
            const Eigen::ColPivHouseholderQR<Matrix> qr(a.basis);
            const Matrix q = qr.householderQ() *
                             Matrix::Identity(a.basis.rows(), qr.rank());
            return a.point + q * (q.transpose() * (z - a.point));
          },
      },
      c.set());
}

MovingSet::MovingSet(ConvexSet base, OperatorModel translation)
    : base_(std::move(base)), translation_(std::move(translation)) {
  if (const auto* a = std::get_if<Affine>(&translation_.model())) {
    if (a->matrix.rows() != a->matrix.cols()) {
      throw DimensionError("moving set translation must be square");
    }
  }
  const auto bn = base_.dim();
  const auto tn = translation_.dim();
  if (bn && tn) require_same_dim(*bn, *tn, "moving set");
  lipschitz_ = lipschitz_constant(translation_);
}

Vector project_moving(const MovingSet& m, const Vector& x, const Vector& z) {
  require_same_dim(x.size(), z.size(), "project_moving");
  const Vector shift = m.translation().evaluate(x);
  return shift + project(m.base(), z - shift);
}

double certify_nu(const MovingSet& m) { return 2.0 * m.translation_lipschitz(); }

}  // namespace sgqvi
