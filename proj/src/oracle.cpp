#include "sgqvi/oracle.hpp"

#include <cmath>
#include <limits>

namespace sgqvi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct AffineData {
  Matrix lin;
  Vector off;
  Vector operator()(const Vector& x) const { return lin * x + off; }
};

AffineData affine_of(const OperatorModel& op, Eigen::Index n) {
  return {op.linear_part(n), op.offset(n)};
}

Vector nearest(const ConvexSet& c, const Vector& z) {
  const auto& v = c.set();
  if (std::holds_alternative<WholeSpace>(v)) return z;
  if (const auto* b = std::get_if<Box>(&v)) {
    Vector p = z;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      p(i) = std::min(std::max(p(i), b->lower(i)), b->upper(i));
    }
    return p;
  }
  if (const auto* b = std::get_if<Ball>(&v)) {
    const double dist = (z - b->center).norm();
    if (dist <= b->radius) return z;
    return b->center + (z - b->center) * (b->radius / dist);
  }
  if (const auto* h = std::get_if<Halfspace>(&v)) {
    const Vector u = h->normal / h->normal.norm();
    const double s = u.dot(z) - h->offset / h->normal.norm();
    return s > 0.0 ? Vector(z - s * u) : z;
  }
  const auto& a = std::get<AffineSet>(v);
  if (a.basis.cols() == 0) return a.point;
  // Orthonormal basis of the direction space via Householder QR.
  Eigen::HouseholderQR<Matrix> qr(a.basis);
  const Eigen::Index rank =
      Eigen::FullPivLU<Matrix>(a.basis).rank();
  const Matrix q = qr.householderQ() * Matrix::Identity(a.basis.rows(), rank);
  return a.point + q * (q.transpose() * (z - a.point));
}

struct Space {
  AffineData f;
  AffineData g;
  AffineData m;
  ConvexSet base;
  Eigen::ColPivHouseholderQR<Matrix> g_solver;

  Space(const OperatorModel& f_op, const GMap& g_map, const MovingSet& c,
        Eigen::Index n)
      : f(affine_of(f_op, n)),
        g(affine_of(g_map.inner(), n)),
        m(affine_of(c.translation(), n)),
        base(c.base()),
        g_solver(g.lin) {}

  Vector project_at(const Vector& x, const Vector& z) const {
    const Vector shift = m(x);
    return shift + nearest(base, z - shift);
  }

  double residual(const Vector& x, double rho) const {
    const Vector gx = g(x);
    return (gx - project_at(x, gx - rho * f(x))).norm();
  }

  Vector map(const Vector& x, double rho) const {
    const Vector gx = g(x);
    const Vector target = project_at(x, gx - rho * f(x));
    return g_solver.solve(Vector(target - g.off));
  }
};

}  // namespace

bool solve_box_inequality(const Matrix& f_lin, const Vector& f_off,
                          const Matrix& g_lin, const Vector& g_off,
                          const Vector& lower, const Vector& upper,
                          Vector& x) {
  const Eigen::Index n = f_off.size();
  long patterns = 1;
  for (Eigen::Index i = 0; i < n; ++i) patterns *= 3;
  const double slack = 1e-11;
  for (long code = 0; code < patterns; ++code) {
    // Digit 0: g_i free (f_i = 0); 1: g_i at lower; 2: g_i at upper.
    Matrix lhs(n, n);
    Vector rhs(n);
    long c = code;
    bool skip = false;
    std::vector<int> state(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i, c /= 3) {
      const int s = static_cast<int>(c % 3);
      state[static_cast<std::size_t>(i)] = s;
      if (s == 0) {
        lhs.row(i) = f_lin.row(i);
        rhs(i) = -f_off(i);
      } else {
        const double bound = s == 1 ? lower(i) : upper(i);
        if (!std::isfinite(bound)) {
          skip = true;
          break;
        }
        lhs.row(i) = g_lin.row(i);
        rhs(i) = bound - g_off(i);
      }
    }
    if (skip) continue;
    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible()) continue;
    const Vector cand = lu.solve(rhs);
    const Vector gv = g_lin * cand + g_off;
    const Vector fv = f_lin * cand + f_off;
    bool ok = true;
    for (Eigen::Index i = 0; i < n && ok; ++i) {
      const int s = state[static_cast<std::size_t>(i)];
      if (gv(i) < lower(i) - slack || gv(i) > upper(i) + slack) ok = false;
      if (s == 1 && fv(i) < -slack) ok = false;
      if (s == 2 && fv(i) > slack) ok = false;
    }
    if (ok) {
      x = cand;
      return true;
    }
  }
  return false;
}

OracleResult oracle_solve(const ProblemSpec& spec,
                          const OracleOptions& options) {
  const SolverParams defaults = spec.default_params.value_or(SolverParams{});
  const double rho1 = options.rho1 > 0.0 ? options.rho1 : defaults.rho1;
  const double rho2 = options.rho2 > 0.0 ? options.rho2 : defaults.rho2;

  const Space first(spec.f1, spec.g1, spec.c1, spec.n1);
  const Space second(spec.f2, spec.g2, spec.c2, spec.n2);
  const Matrix& a = spec.a.matrix();

  OracleResult out;
  auto total_residual = [&](const Vector& x) {
    return first.residual(x, rho1) + second.residual(a * x, rho2);
  };

  const bool fixed_box =
      spec.c1.is_fixed() && spec.n1 <= 5 &&
      (std::holds_alternative<Box>(spec.c1.base().set()) ||
       std::holds_alternative<WholeSpace>(spec.c1.base().set()));
  if (fixed_box) {
    Vector lower = Vector::Constant(spec.n1, -kInf);
    Vector upper = Vector::Constant(spec.n1, kInf);
    if (const auto* b = std::get_if<Box>(&spec.c1.base().set())) {
      lower = b->lower;
      upper = b->upper;
    }
    // A constant translation shifts the box.
    const Vector shift = first.m.off;
    Vector x;
    if (solve_box_inequality(first.f.lin, first.f.off, first.g.lin,
                             first.g.off, lower + shift, upper + shift, x)) {
      out.x = x;
      out.method = "active-set";
      out.residual = total_residual(x);
      out.converged = out.residual <= options.tol;
      if (out.converged) return out;
    }
  }

  out.method = "fixed-point";
  Vector x = Vector::Zero(spec.n1);
  for (long it = 0; it < options.max_iters; ++it) {
    out.iterations = it + 1;
    const Vector next = first.map(x, rho1);
    if (!next.allFinite()) break;
    const double move = (next - x).norm();
    x = next;
    if (first.residual(x, rho1) <= 0.1 * options.tol ||
        move <= 1e-16 * (1.0 + x.norm())) {
      break;
    }
  }
  out.x = x;
  out.residual = total_residual(x);
  out.converged = x.allFinite() && out.residual <= options.tol;
  return out;
}

}  // namespace sgqvi
