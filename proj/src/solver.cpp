#include "sgqvi/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sgqvi/errors.hpp"

namespace sgqvi {

double relaxation(const RelaxationSchedule& s, long n) {
  if (const auto* c = std::get_if<ConstantSchedule>(&s)) return c->value;
  return 1.0 / static_cast<double>(n + 2);
}

double relaxation_sum(const RelaxationSchedule& s, long count) {
  if (const auto* c = std::get_if<ConstantSchedule>(&s)) {
    return c->value * static_cast<double>(count);
  }
  double sum = 0.0;
  for (long n = 0; n < count; ++n) sum += relaxation(s, n);
  return sum;
}

RelaxationSchedule parse_schedule(const std::string& text) {
  if (text == "harmonic") return HarmonicSchedule{};
  const std::string prefix = "constant:";
  std::string value = text;
  if (text.rfind(prefix, 0) == 0) value = text.substr(prefix.size());
  std::size_t used = 0;
  double a = 0.0;
  try {
    a = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("unrecognized relaxation schedule '" + text +
                                "' (expected 'constant:<a>' or 'harmonic')");
  }
  if (!(a > 0.0 && a < 1.0)) {
    throw std::invalid_argument("constant relaxation must lie in (0, 1)");
  }
  return ConstantSchedule{a};
}

std::string to_string(const RelaxationSchedule& s) {
  if (const auto* c = std::get_if<ConstantSchedule>(&s)) {
    std::ostringstream os;
    os.precision(17);
    os << "constant:" << c->value;
    return os.str();
  }
  return "harmonic";
}

void validate(const SolverParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  positive(p.rho1, "rho1");
  positive(p.rho2, "rho2");
  positive(p.gamma, "gamma");
  positive(p.tol, "tol");
  if (p.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (const auto* c = std::get_if<ConstantSchedule>(&p.schedule)) {
    if (!(c->value > 0.0 && c->value < 1.0)) {
      throw std::invalid_argument("relaxation values must lie in (0, 1)");
    }
  }
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  auto params_eq = [](const std::optional<SolverParams>& x,
                      const std::optional<SolverParams>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->rho1 == y->rho1 && x->rho2 == y->rho2 && x->gamma == y->gamma &&
           to_string(x->schedule) == to_string(y->schedule) &&
           x->max_iters == y->max_iters && x->tol == y->tol;
  };
  auto sol_eq = [](const std::optional<Vector>& x,
                   const std::optional<Vector>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->size() == y->size() && *x == *y);
  };
  return a.n1 == b.n1 && a.n2 == b.n2 && a.a == b.a && a.c1 == b.c1 &&
         a.c2 == b.c2 && a.f1 == b.f1 && a.f2 == b.f2 && a.g1 == b.g1 &&
         a.g2 == b.g2 && sol_eq(a.known_solution, b.known_solution) &&
         params_eq(a.default_params, b.default_params);
}

void check_dimensions(const ProblemSpec& spec) {
  if (spec.n1 < 1 || spec.n2 < 1) throw DimensionError("dims must be >= 1");
  require_same_dim(spec.a.source_dim(), spec.n1, "A columns vs n1");
  require_same_dim(spec.a.target_dim(), spec.n2, "A rows vs n2");
  auto check_op = [](const OperatorModel& op, Eigen::Index n, const char* what) {
    if (const auto d = op.dim()) require_same_dim(*d, n, what);
    if (const auto* a = std::get_if<Affine>(&op.model())) {
      require_same_dim(a->matrix.rows(), n, what);
    }
  };
  auto check_set = [&](const MovingSet& m, Eigen::Index n, const char* what) {
    if (const auto d = m.base().dim()) require_same_dim(*d, n, what);
    check_op(m.translation(), n, what);
  };
  check_set(spec.c1, spec.n1, "C1");
  check_set(spec.c2, spec.n2, "C2");
  check_op(spec.f1, spec.n1, "f1");
  check_op(spec.f2, spec.n2, "f2");
  check_op(spec.g1.inner(), spec.n1, "g1");
  check_op(spec.g2.inner(), spec.n2, "g2");
  if (spec.known_solution) {
    require_same_dim(spec.known_solution->size(), spec.n1, "known_solution");
  }
}

std::string to_string(AlgorithmVariant v) {
  switch (v) {
    case AlgorithmVariant::General:
      return "Alg2.1";
    case AlgorithmVariant::IdentityG:
      return "Alg2.2";
    case AlgorithmVariant::FixedSets:
      return "Alg2.3";
    case AlgorithmVariant::FixedIdentity:
      return "Alg2.4";
    case AlgorithmVariant::Mann:
      return "Alg2.5";
  }
  return "unknown";
}

AlgorithmVariant select_variant(const ProblemSpec& spec) {
  const bool g_identity = spec.g1.is_identity() && spec.g2.is_identity();
  const bool fixed = spec.c1.is_fixed() && spec.c2.is_fixed();
  if (g_identity && spec.n1 == spec.n2 && spec.a.is_identity() &&
      spec.f1 == spec.f2 && spec.c1 == spec.c2) {
    return AlgorithmVariant::Mann;
  }
  if (g_identity && fixed) return AlgorithmVariant::FixedIdentity;
  if (g_identity) return AlgorithmVariant::IdentityG;
  if (fixed) return AlgorithmVariant::FixedSets;
  return AlgorithmVariant::General;
}

StepResult step(const ProblemSpec& spec, const SolverParams& params,
                const Vector& x, long n) {
  require_same_dim(x.size(), spec.n1, "step");
  const double a = relaxation(params.schedule, n);

  const Vector gx = spec.g1.evaluate(x);
  const Vector gy = project_moving(
      spec.c1, x, gx - params.rho1 * spec.f1.evaluate(x));
  StepResult out;
  out.y = invert_g(spec.g1, gy);

  const Vector ay = spec.a.apply(out.y);
  const Vector gay = spec.g2.evaluate(ay);
  const Vector gz = project_moving(
      spec.c2, ay, gay - params.rho2 * spec.f2.evaluate(ay));
  out.z = invert_g(spec.g2, gz);

  const Vector target = out.y + params.gamma * spec.a.adjoint_apply(out.z - ay);
  out.x_next = (1.0 - a) * x + a * target;
  return out;
}

double residual(const ProblemSpec& spec, double rho1, double rho2,
                const Vector& x) {
  require_same_dim(x.size(), spec.n1, "residual");
  const Vector g1x = spec.g1.evaluate(x);
  const Vector p1 =
      project_moving(spec.c1, x, g1x - rho1 * spec.f1.evaluate(x));
  const Vector ax = spec.a.apply(x);
  const Vector g2ax = spec.g2.evaluate(ax);
  const Vector p2 =
      project_moving(spec.c2, ax, g2ax - rho2 * spec.f2.evaluate(ax));
  return (g1x - p1).norm() + (g2ax - p2).norm();
}

double residual(const ProblemSpec& spec, const Vector& x) {
  const SolverParams p = spec.default_params.value_or(SolverParams{});
  return residual(spec, p.rho1, p.rho2, x);
}

const char* to_string(SolveStatus s) {
  return s == SolveStatus::Converged ? "Converged" : "MaxIters";
}

SolveResult solve(const ProblemSpec& spec, const SolverParams& params,
                  const Vector& x0, const SolveOptions& options) {
  validate(params);
  require_same_dim(x0.size(), spec.n1, "solve: x0");

  SolveResult out;
  out.trace.params = params;
  out.trace.theta = options.theta;

  Vector x = x0;
  for (long n = 0;; ++n) {
    StepResult s = step(spec, params, x, n);
    IterateRecord rec;
    rec.n = n;
    rec.residual = residual(spec, params.rho1, params.rho2, x);
    if (spec.known_solution) rec.error = (x - *spec.known_solution).norm();
    if (options.theta) {
      rec.bound_factor =
          1.0 - relaxation(params.schedule, n) * (1.0 - *options.theta);
    }
    const bool done = rec.residual <= params.tol || n >= params.max_iters;
    if (options.keep_iterates || done) {
      rec.x = x;
      rec.y = s.y;
      rec.z = s.z;
    }
    out.trace.records.push_back(std::move(rec));
    if (done) {
      out.status = out.trace.records.back().residual <= params.tol
                       ? SolveStatus::Converged
                       : SolveStatus::MaxIters;
      out.iterations = n;
      out.final_residual = out.trace.records.back().residual;
      out.x = std::move(x);
      return out;
    }
    x = std::move(s.x_next);
  }
}

}  // namespace sgqvi
