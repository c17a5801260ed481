#include "sgqvi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgqvi/errors.hpp"

namespace sgqvi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Matrix symmetric_part(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

bool same_shape_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_size_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && a == b;
}

}  // namespace

OperatorModel::OperatorModel(Affine a) {
  if (a.matrix.rows() != a.offset.size()) {
    throw DimensionError("affine model: offset has " +
                         std::to_string(a.offset.size()) + " entries, matrix " +
                         std::to_string(a.matrix.rows()) + " rows");
  }
  require_finite(a.matrix, "affine model matrix");
  require_finite(a.offset, "affine model offset");
  model_ = std::move(a);
}

OperatorModel::OperatorModel(Scaling s) {
  if (!std::isfinite(s.s)) throw std::invalid_argument("scaling: non-finite s");
  model_ = s;
}

OperatorModel::OperatorModel(Translation t) {
  require_finite(t.c, "translation");
  model_ = std::move(t);
}

std::optional<Eigen::Index> OperatorModel::dim() const {
  return std::visit(
      overloaded{
          [](const Affine& a) -> std::optional<Eigen::Index> {
            return a.matrix.cols();
          },
          [](const Translation& t) -> std::optional<Eigen::Index> {
            return t.c.size();
          },
          [](const auto&) -> std::optional<Eigen::Index> {
            return std::nullopt;
          },
      },
      model_);
}

Vector OperatorModel::evaluate(const Vector& x) const {
  return std::visit(
      overloaded{
          [&](const Affine& a) -> Vector {
            require_same_dim(x.size(), a.matrix.cols(), "affine evaluate");
            return a.matrix * x + a.offset;
          },
          [&](const Scaling& s) -> Vector { return s.s * x; },
          [&](const Translation& t) -> Vector {
            require_same_dim(x.size(), t.c.size(), "translation evaluate");
            return x + t.c;
          },
          [&](const Zero&) -> Vector { return Vector::Zero(x.size()); },
      },
      model_);
}

Matrix OperatorModel::linear_part(Eigen::Index n) const {
  return std::visit(
      overloaded{
          [&](const Affine& a) -> Matrix {
            require_same_dim(n, a.matrix.cols(), "affine linear_part");
            return a.matrix;
          },
          [&](const Scaling& s) -> Matrix {
            return s.s * Matrix::Identity(n, n);
          },
          [&](const Translation& t) -> Matrix {
            require_same_dim(n, t.c.size(), "translation linear_part");
            return Matrix::Identity(n, n);
          },
          [&](const Zero&) -> Matrix { return Matrix::Zero(n, n); },
      },
      model_);
}

Vector OperatorModel::offset(Eigen::Index n) const {
  return std::visit(
      overloaded{
          [&](const Affine& a) -> Vector { return a.offset; },
          [&](const Translation& t) -> Vector { return t.c; },
          [&](const auto&) -> Vector { return Vector::Zero(n); },
      },
      model_);
}

bool OperatorModel::is_identity() const {
  return std::visit(
      overloaded{
          [](const Affine& a) {
            return a.matrix.rows() == a.matrix.cols() &&
                   a.matrix ==
                       Matrix::Identity(a.matrix.rows(), a.matrix.cols()) &&
                   a.offset.isZero(0.0);
          },
          [](const Scaling& s) { return s.s == 1.0; },
          [](const Translation& t) { return t.c.isZero(0.0); },
          [](const Zero&) { return false; },
      },
      model_);
}

bool OperatorModel::is_constant() const {
  return std::visit(overloaded{
                        [](const Affine& a) { return a.matrix.isZero(0.0); },
                        [](const Scaling& s) { return s.s == 0.0; },
                        [](const Translation&) { return false; },
                        [](const Zero&) { return true; },
                    },
                    model_);
}

bool operator==(const OperatorModel& a, const OperatorModel& b) {
  if (a.model_.index() != b.model_.index()) return false;
  return std::visit(
      overloaded{
          [&](const Affine& x) {
            const auto& y = std::get<Affine>(b.model_);
            return same_shape_equal(x.matrix, y.matrix) &&
                   same_size_equal(x.offset, y.offset);
          },
          [&](const Scaling& x) { return x.s == std::get<Scaling>(b.model_).s; },
          [&](const Translation& x) {
            return same_size_equal(x.c, std::get<Translation>(b.model_).c);
          },
          [](const Zero&) { return true; },
      },
      a.model_);
}

Vector evaluate(const OperatorModel& op, const Vector& x) {
  return op.evaluate(x);
}

Constants certify_constants(const OperatorModel& op) {
  return std::visit(
      overloaded{
          [](const Affine& a) -> Constants {
            if (a.matrix.rows() != a.matrix.cols()) {
              throw std::invalid_argument(
                  "certify_constants: affine matrix must be square");
            }
            Constants c;
            c.alpha =
                std::max(0.0, min_symmetric_eigenvalue(symmetric_part(a.matrix)));
            c.beta = spectral_norm(a.matrix);
            return c;
          },
          [](const Scaling& s) -> Constants {
            return {std::max(0.0, s.s), std::abs(s.s)};
          },
          [](const Translation&) -> Constants { return {1.0, 1.0}; },
          [](const Zero&) -> Constants { return {0.0, 0.0}; },
      },
      op.model());
}

double lipschitz_constant(const OperatorModel& op) {
  if (const auto* a = std::get_if<Affine>(&op.model())) {
    return spectral_norm(a->matrix);
  }
  return certify_constants(op).beta;
}

GMap::GMap(OperatorModel inner) : inner_(std::move(inner)) {
  identity_ = inner_.is_identity();
  if (identity_) {
    sigma_ = 0.0;
    delta_ = 1.0;
    return;
  }
  const auto n = inner_.dim();
  if (const auto* a = std::get_if<Affine>(&inner_.model())) {
    if (a->matrix.rows() != a->matrix.cols()) {
      throw DimensionError("g must map a space into itself");
    }
  }
  if (n) {
    const Matrix lin = inner_.linear_part(*n);
    sigma_ = std::max(
        0.0, min_symmetric_eigenvalue(symmetric_part(lin) -
                                      Matrix::Identity(*n, *n)));
    delta_ = spectral_norm(lin);
  } else if (const auto* s = std::get_if<Scaling>(&inner_.model())) {
    sigma_ = std::max(0.0, s->s - 1.0);
    delta_ = std::abs(s->s);
  } else {
    sigma_ = 0.0;
    delta_ = 0.0;
  }
}

Vector GMap::evaluate(const Vector& x) const {
  if (identity_) return x;
  return inner_.evaluate(x);
}

double certify_relative(const OperatorModel& f, const GMap& g, Eigen::Index n) {
  if (f.is_constant()) return 0.0;
  if (g.is_identity()) return certify_constants(f).alpha;
  const Matrix mf = f.linear_part(n);
  const Matrix dg = g.inner().linear_part(n);
  const Matrix prod = dg.transpose() * mf;
  return std::max(0.0, min_symmetric_eigenvalue(symmetric_part(prod)));
}

Vector invert_g(const GMap& g, const Vector& target) {
  if (g.is_identity()) return target;
  return std::visit(
      overloaded{
          [&](const Affine& a) -> Vector {
            require_same_dim(target.size(), a.matrix.rows(), "invert_g");
            Eigen::FullPivLU<Matrix> lu(a.matrix);
            if (!lu.isInvertible()) {
              throw SingularOperatorError("invert_g: singular linear part");
            }
            const Vector rhs = target - a.offset;
            Vector y = lu.solve(rhs);
            // One step of iterative refinement.
            y += lu.solve(Vector(rhs - a.matrix * y));
            return y;
          },
          [&](const Scaling& s) -> Vector {
            if (s.s == 0.0) {
              throw SingularOperatorError("invert_g: zero scaling");
            }
            return target / s.s;
          },
          [&](const Translation& t) -> Vector {
            require_same_dim(target.size(), t.c.size(), "invert_g");
            return target - t.c;
          },
          [&](const Zero&) -> Vector {
            throw SingularOperatorError("invert_g: zero map");
          },
      },
      g.inner().model());
}

Vector solve_monotone_equation(const std::function<Vector(const Vector&)>& map,
                               const Vector& target, double strong_monotonicity,
                               double lipschitz, double tol, int max_iters) {
  if (!(strong_monotonicity > 0.0) || lipschitz < strong_monotonicity) {
    throw std::invalid_argument(
        "solve_monotone_equation: need 0 < strong_monotonicity <= lipschitz");
  }
  const double step = strong_monotonicity / (lipschitz * lipschitz);
  Vector y = target;
  for (int it = 0; it < max_iters; ++it) {
    const Vector r = map(y) - target;
    if (r.norm() <= tol) return y;
    y -= step * r;
  }
  throw NoConvergenceError("solve_monotone_equation: no convergence after " +
                           std::to_string(max_iters) + " iterations");
}

}  // namespace sgqvi
