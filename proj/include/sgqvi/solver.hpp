#pragma once

#include <optional>
#include <vector>

#include "sgqvi/problem.hpp"

namespace sgqvi {

struct StepResult {
  Vector x_next;
  Vector y;
  Vector z;
};

/// One pass of the relaxed projection scheme from x^n:
///   g1(y) = P_{C1(x)}(g1(x) - rho1 f1(x))
///   g2(z) = P_{C2(Ay)}(g2(Ay) - rho2 f2(Ay))
///   x^{n+1} = (1 - a) x + a [y + gamma A*(z - Ay)],  a = alpha^n.
StepResult step(const ProblemSpec& spec, const SolverParams& params,
                const Vector& x, long n);

/// Fixed-point residual |g1(x) - P_{C1(x)}(g1(x) - rho1 f1(x))|
///                    + |g2(Ax) - P_{C2(Ax)}(g2(Ax) - rho2 f2(Ax))|.
double residual(const ProblemSpec& spec, double rho1, double rho2,
                const Vector& x);
/// Uses the spec's default parameters (rho = 1 when absent).
double residual(const ProblemSpec& spec, const Vector& x);

struct IterateRecord {
  long n = 0;
  Vector x;
  Vector y;
  Vector z;
  double residual = 0.0;
  std::optional<double> error;         // |x^n - x*| when x* is known
  std::optional<double> bound_factor;  // 1 - alpha^n (1 - theta)
};

struct IterateTrace {
  SolverParams params;
  std::optional<double> theta;
  std::vector<IterateRecord> records;
};

enum class SolveStatus { Converged, MaxIters };

const char* to_string(SolveStatus s);

struct SolveOptions {
  /// Contraction factor used to fill bound_factor.
  std::optional<double> theta;
  /// Keep x, y, z in every record. The final record always keeps them.
  bool keep_iterates = true;
};

struct SolveResult {
  Vector x;
  IterateTrace trace;
  SolveStatus status = SolveStatus::MaxIters;
  long iterations = 0;  // number of steps taken
  double final_residual = 0.0;
};

/// Iterates `step` from x0 until residual(x^n) <= tol or max_iters steps.
/// The record for n holds x^n, the y^n and z^n computed from it, and
/// residual(x^n); the last record is the returned point.
SolveResult solve(const ProblemSpec& spec, const SolverParams& params,
                  const Vector& x0, const SolveOptions& options = {});

}  // namespace sgqvi
