#include "sgqvi/generator.hpp"

#include <cmath>
#include <random>

#include "sgqvi/analysis.hpp"
#include "sgqvi/errors.hpp"
#include "sgqvi/solver.hpp"

namespace sgqvi {

std::string to_string(Family f) {
  return f == Family::InteriorZero ? "interior" : "boundary";
}

Family parse_family(const std::string& text) {
  if (text == "interior" || text == "InteriorZero") return Family::InteriorZero;
  if (text == "boundary" || text == "BoundarySolution") {
    return Family::BoundarySolution;
  }
  throw std::invalid_argument("unknown family '" + text +
                              "' (expected 'interior' or 'boundary')");
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    if (lo == hi) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double uniform(const Range& r) { return uniform(r.lo, r.hi); }

  Vector vector(Eigen::Index n, double r) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(-r, r);
    return v;
  }

  Vector unit(Eigen::Index n) {
    Vector v;
    do {
      v = vector(n, 1.0);
    } while (v.norm() < 1e-3);
    return v.normalized();
  }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(-1.0, 1.0);
    }
    return m;
  }

  /// Random matrix with spectral norm exactly `scale` (up to rounding).
  Matrix scaled(Eigen::Index rows, Eigen::Index cols, double scale) {
    if (scale == 0.0) return Matrix::Zero(rows, cols);
    Matrix m;
    double nm = 0.0;
    do {
      m = matrix(rows, cols);
      nm = spectral_norm(m);
    } while (nm < 1e-6);
    return m * (scale / nm);
  }

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

void check_range(const Range& r, const char* name, double min_lo) {
  if (!(r.lo <= r.hi) || !(r.lo >= min_lo) || !std::isfinite(r.hi)) {
    throw GenerationError(std::string("invalid range for ") + name);
  }
}

void check_config(const GeneratorConfig& cfg) {
  if (cfg.n1 < 1 || cfg.n2 < 1) throw GenerationError("dims must be >= 1");
  check_range(cfg.f_scale, "f_scale", 0.0);
  check_range(cfg.g_scale, "g_scale", 0.0);
  check_range(cfg.nu, "nu", 0.0);
  check_range(cfg.a_norm, "a_norm", 0.0);
  if (!(cfg.f_scale.lo > 0.0)) throw GenerationError("f_scale must be > 0");
  if (!(cfg.g_scale.lo > 0.0)) throw GenerationError("g_scale must be > 0");
  if (!(cfg.a_norm.lo > 0.0)) throw GenerationError("a_norm must be > 0");
  if (cfg.f_noise < 0.0 || cfg.g_noise < 0.0 || cfg.solution_radius < 0.0) {
    throw GenerationError("noise levels and solution radius must be >= 0");
  }
  if (cfg.identity_a && cfg.n1 != cfg.n2) {
    throw GenerationError("identity_a requires n1 == n2");
  }
  if (cfg.family == Family::InteriorZero && cfg.set_kinds.empty()) {
    throw GenerationError("set_kinds must not be empty");
  }
  if (cfg.max_attempts < 1) throw GenerationError("max_attempts must be >= 1");
}

struct SpaceModels {
  GMap g;
  OperatorModel f;
  MovingSet c;
};

GMap draw_g(Draw& d, const GeneratorConfig& cfg, Eigen::Index n) {
  const double scale = d.uniform(cfg.g_scale);
  if (scale == 1.0 && cfg.g_noise == 0.0) return GMap();
  const Matrix lin =
      scale * (Matrix::Identity(n, n) + d.scaled(n, n, cfg.g_noise));
  return GMap(Affine{lin, d.vector(n, 0.5)});
}

OperatorModel draw_translation(Draw& d, const GeneratorConfig& cfg,
                               Eigen::Index n) {
  const double nu = d.uniform(cfg.nu);
  if (nu == 0.0) return Zero{};
  return Affine{d.scaled(n, n, 0.5 * nu), d.vector(n, 0.5)};
}

ConvexSet interior_set(Draw& d, SetKind kind, const Vector& w) {
  const Eigen::Index n = w.size();
  switch (kind) {
    case SetKind::Whole:
      return WholeSpace{};
    case SetKind::Box: {
      Vector lo(n), hi(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        lo(i) = w(i) - d.uniform(0.1, 2.0);
        hi(i) = w(i) + d.uniform(0.1, 2.0);
      }
      return Box{lo, hi};
    }
    case SetKind::Ball: {
      const double r = d.uniform(0.5, 2.0);
      return Ball{w + d.uniform(0.0, 0.8) * r * d.unit(n), r};
    }
    case SetKind::Halfspace: {
      const Vector normal = d.unit(n) * d.uniform(0.5, 2.0);
      return Halfspace{normal, normal.dot(w) + d.uniform(0.1, 1.0)};
    }
    case SetKind::Affine: {
      // A flat of dimension n - 1 through w (a point when n == 1).
      const Eigen::Index k = n - 1;
      const Matrix basis = d.matrix(n, k);
      return AffineSet{basis, w + basis * d.vector(k, 1.0)};
    }
  }
  return WholeSpace{};
}

// Base set and the value f(x*) that makes x* a solution in one space.
struct Placement {
  ConvexSet base;
  Vector f_at_solution;
};

Placement place(Draw& d, const GeneratorConfig& cfg, const Vector& w) {
  const Eigen::Index n = w.size();
  if (cfg.family == Family::InteriorZero) {
    const SetKind kind = cfg.set_kinds[d.index(cfg.set_kinds.size())];
    return {interior_set(d, kind, w), Vector::Zero(n)};
  }
  Vector lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lo(i) = w(i) - d.uniform(0.1, 2.0);
    hi(i) = w(i) + d.uniform(0.1, 2.0);
  }
  const auto face = static_cast<Eigen::Index>(d.index(static_cast<std::size_t>(n)));
  const bool upper = d.uniform(0.0, 1.0) < 0.5;
  Vector f_star = Vector::Zero(n);
  const double lambda = d.uniform(0.5, 2.0);
  // The inward normal of the active face.
  if (upper) {
    hi(face) = w(face);
    f_star(face) = -lambda;
  } else {
    lo(face) = w(face);
    f_star(face) = lambda;
  }
  return {Box{lo, hi}, f_star};
}

SpaceModels draw_space(Draw& d, const GeneratorConfig& cfg, Eigen::Index n,
                       const Vector& solution) {
  SpaceModels s;
  s.g = draw_g(d, cfg, n);
  const Matrix dg = s.g.inner().linear_part(n);
  const double fs = d.uniform(cfg.f_scale);
  const Matrix mf = fs * (dg + d.scaled(n, n, cfg.f_noise * spectral_norm(dg)));

  const OperatorModel m = draw_translation(d, cfg, n);
  const Vector w = s.g.evaluate(solution) - m.evaluate(solution);
  Placement p = place(d, cfg, w);
  s.c = MovingSet(std::move(p.base), m);
  s.f = Affine{mf, Vector(p.f_at_solution - mf * solution)};
  return s;
}

SolverParams choose_params(const ConstantsBundle& c) {
  SolverParams p;
  p.rho2 = c.beta2 > 0.0 ? c.alpha2 / (c.beta2 * c.beta2) : 1.0;
  if (!(p.rho2 > 0.0)) p.rho2 = 1.0;
  p.rho1 = c.beta1 > 0.0 ? c.alpha1 / (c.beta1 * c.beta1) : 1.0;
  if (!(p.rho1 > 0.0)) p.rho1 = 1.0;
  p.gamma = 1.0 / (c.norm_a * c.norm_a);
  return p;
}

}  // namespace

ProblemSpec generate(const GeneratorConfig& cfg) {
  check_config(cfg);
  Draw d(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    ProblemSpec spec;
    spec.n1 = cfg.n1;
    spec.n2 = cfg.n2;
    spec.a = cfg.identity_a
                 ? LinearMap::identity(cfg.n1)
                 : LinearMap(d.scaled(cfg.n2, cfg.n1, d.uniform(cfg.a_norm)));
    const Vector x_star = d.vector(cfg.n1, cfg.solution_radius);
    SpaceModels s1 = draw_space(d, cfg, cfg.n1, x_star);
    SpaceModels s2 = draw_space(d, cfg, cfg.n2, spec.a.apply(x_star));
    spec.g1 = std::move(s1.g);
    spec.f1 = std::move(s1.f);
    spec.c1 = std::move(s1.c);
    spec.g2 = std::move(s2.g);
    spec.f2 = std::move(s2.f);
    spec.c2 = std::move(s2.c);
    spec.known_solution = x_star;

    const ConstantsBundle c = certify_constants(spec);
    const SolverParams p = choose_params(c);
    if (!certify(c, p).certified()) continue;
    spec.default_params = p;
    if (residual(spec, p.rho1, p.rho2, x_star) > 1e-8) continue;
    return spec;
  }
  throw GenerationError("no certified instance after " +
                        std::to_string(cfg.max_attempts) +
                        " attempts; narrow the constant ranges");
}

}  // namespace sgqvi
