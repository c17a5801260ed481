#pragma once

// Reference solver that shares no numerical code path with the split
// iteration: its own projections, its own affine evaluation and inversion,
// and a different algorithm.
//
// A solution of the split problem solves the first-space inequality, which
// has a unique solution when the first-space contraction factor is below 1.
// The oracle therefore solves that inequality alone and then confirms the
// second-space condition at A x.

#include <string>

#include "sgqvi/problem.hpp"

namespace sgqvi {

struct OracleResult {
  Vector x;
  bool converged = false;
  double residual = 0.0;  // recomputed by the oracle's own code
  long iterations = 0;
  std::string method;  // "active-set" or "fixed-point"
};

struct OracleOptions {
  double tol = 1e-12;
  long max_iters = 200'000;
  /// Step for the first-space map; defaults to the spec's rho1, else 1.
  double rho1 = 0.0;
  double rho2 = 0.0;
};

/// For fixed box/whole-space sets in dimension <= 5 the first-space
/// inequality is solved exactly by enumerating active faces; otherwise the
/// unrelaxed first-space fixed-point map is iterated to `tol`.
/// `converged` is false when no point meeting `tol` on both spaces is found.
OracleResult oracle_solve(const ProblemSpec& spec,
                          const OracleOptions& options = {});

/// Active-face enumeration for g(x) in a fixed box (or whole space) with
/// affine f and g. Returns false when no face pattern is consistent.
bool solve_box_inequality(const Matrix& f_lin, const Vector& f_off,
                          const Matrix& g_lin, const Vector& g_off,
                          const Vector& lower, const Vector& upper, Vector& x);

}  // namespace sgqvi
