#pragma once

#include <optional>
#include <string>

#include "sgqvi/analysis.hpp"
#include "sgqvi/io.hpp"
#include "sgqvi/oracle.hpp"
#include "sgqvi/solver.hpp"

namespace sgqvi {

/// Steps n where |x^{n+1} - x*| > bound_factor^n |x^n - x*| + slack.
/// Records without error or bound_factor are skipped.
long count_contraction_violations(const IterateTrace& trace,
                                  double slack = 1e-9);

struct RunReport {
  std::string variant;
  ConstantsBundle constants;
  StepCertificate certificate;
  SolveStatus status = SolveStatus::MaxIters;
  long iterations = 0;
  double final_residual = 0.0;
  std::optional<double> final_error;
  double relaxation_sum = 0.0;
  long contraction_violations = 0;
  bool oracle_converged = false;
  std::optional<double> oracle_distance;
  double wall_seconds = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

struct VerifyOptions {
  CertifyMode mode = CertifyMode::Hypotheses;
  double oracle_tolerance = 1e-6;
  double contraction_slack = 1e-9;
};

/// Certifies, solves from x0 and runs the oracle on the same spec
/// concurrently, then cross-checks them. Numerical exceptions propagate.
RunReport verify(const ProblemSpec& spec, const SolverParams& params,
                 const Vector& x0, const VerifyOptions& options = {});

std::string render(const RunReport& report);
Json to_json(const RunReport& report);

}  // namespace sgqvi
