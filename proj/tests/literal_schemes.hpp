#pragma once

// The specialized iterations written out formula by formula, without going
// through the unified step. Used to check that the unified step reduces to
// each of them.

#include "sgqvi/problem.hpp"
#include "sgqvi/projection.hpp"

namespace sgqvi::testing {

// g = I, moving sets.
inline Vector identity_g_step(const ProblemSpec& s, const SolverParams& p,
                              const Vector& x, long n) {
  const double a = relaxation(p.schedule, n);
  const Vector y = project_moving(s.c1, x, x - p.rho1 * s.f1.evaluate(x));
  const Vector ay = s.a.apply(y);
  const Vector z = project_moving(s.c2, ay, ay - p.rho2 * s.f2.evaluate(ay));
  return (1.0 - a) * x + a * (y + p.gamma * s.a.adjoint_apply(z - ay));
}

// Fixed sets C_i, general g.
inline Vector fixed_sets_step(const ProblemSpec& s, const SolverParams& p,
                              const Vector& x, long n) {
  const double a = relaxation(p.schedule, n);
  const Vector gy =
      project(s.c1.base(), s.g1.evaluate(x) - p.rho1 * s.f1.evaluate(x));
  const Vector y = invert_g(s.g1, gy);
  const Vector ay = s.a.apply(y);
  const Vector gz =
      project(s.c2.base(), s.g2.evaluate(ay) - p.rho2 * s.f2.evaluate(ay));
  const Vector z = invert_g(s.g2, gz);
  return (1.0 - a) * x + a * (y + p.gamma * s.a.adjoint_apply(z - ay));
}

// Fixed sets and g = I.
inline Vector fixed_identity_step(const ProblemSpec& s, const SolverParams& p,
                                  const Vector& x, long n) {
  const double a = relaxation(p.schedule, n);
  const Vector y = project(s.c1.base(), x - p.rho1 * s.f1.evaluate(x));
  const Vector ay = s.a.apply(y);
  const Vector z = project(s.c2.base(), ay - p.rho2 * s.f2.evaluate(ay));
  return (1.0 - a) * x + a * (y + p.gamma * s.a.adjoint_apply(z - ay));
}

// Single-space Mann iteration.
inline Vector mann_step(const ProblemSpec& s, const SolverParams& p,
                        const Vector& x, long n) {
  const double a = relaxation(p.schedule, n);
  const Vector y = project_moving(s.c1, x, x - p.rho1 * s.f1.evaluate(x));
  return (1.0 - a) * x + a * y;
}

}  // namespace sgqvi::testing
