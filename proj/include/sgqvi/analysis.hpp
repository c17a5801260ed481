#pragma once

// Sufficient conditions for the relaxed projection scheme to contract
// toward a solution, and the contraction factor theta they certify.

#include <optional>
#include <string>
#include <vector>

#include "sgqvi/problem.hpp"

namespace sgqvi {

/// Constants consumed by the convergence bound. Index 1 refers to the first
/// space, index 2 to the second.
struct ConstantsBundle {
  double alpha1 = 0.0;  // f1 strongly monotone w.r.t. g1
  double alpha2 = 0.0;
  double beta1 = 0.0;  // Lipschitz of f_i
  double beta2 = 0.0;
  double delta1 = 1.0;  // Lipschitz of g_i
  double delta2 = 1.0;
  double sigma1 = 0.0;  // strong monotonicity of g_i - I
  double sigma2 = 0.0;
  double nu1 = 0.0;  // moving-set projection sensitivity
  double nu2 = 0.0;
  double norm_a = 1.0;
};

/// Certifies every constant of `spec` from its models.
ConstantsBundle certify_constants(const ProblemSpec& spec);

/// (1/sqrt(2 sigma + 1)) (sqrt(delta^2 - 2 rho alpha + rho^2 beta^2) + nu).
/// Throws InfeasibleConstantsError on a negative radicand and
/// std::invalid_argument unless rho > 0.
double contraction_factor(double alpha, double beta, double delta,
                          double sigma, double nu, double rho);

double compute_theta1(const ConstantsBundle& c, double rho1);
double compute_theta2(const ConstantsBundle& c, double rho2);

/// k1 = sqrt(2 sigma1 + 1) / (1 + 2 theta2) - nu1
double compute_k1(const ConstantsBundle& c, double theta2);

/// theta = theta1 (1 + gamma |A|^2 theta2)
double combined_theta(double theta1, double theta2, double gamma,
                      double norm_a);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo < v && v < hi; }
};

struct Rho1Interval {
  std::optional<Interval> interval;
  double k1 = 0.0;
  std::vector<std::string> violations;
};

/// Open rho1 interval (alpha1/beta1^2 - r, alpha1/beta1^2 + r) cut at 0, with
/// r = sqrt(alpha1^2 - beta1^2 (delta1^2 - k1^2)) / beta1^2. When the
/// preconditions delta1 >= |k1| and alpha1 > beta1 sqrt(delta1^2 - k1^2) fail,
/// `interval` is empty and `violations` names each failure.
Rho1Interval rho1_interval(const ConstantsBundle& c, double theta2);

enum class CertifyMode {
  /// Every displayed hypothesis plus theta < 1.
  Hypotheses,
  /// Only theta < 1 with positive steps and gamma in (0, 2/|A|^2).
  Contraction,
};

enum class Verdict { Certified, Rejected };

struct StepCertificate {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double k1 = 0.0;
  double theta = 0.0;
  std::optional<Interval> rho1_interval;
  std::optional<Interval> gamma_interval;
  Verdict verdict = Verdict::Rejected;
  std::vector<std::string> reasons;

  bool certified() const { return verdict == Verdict::Certified; }
};

StepCertificate certify(const ConstantsBundle& c, const SolverParams& params,
                        CertifyMode mode = CertifyMode::Hypotheses);

/// Single-space Mann degeneration (A = I, shared set, f2 = f1, g = I):
/// theta2 = 0, k1 = 1 - nu1, theta = theta1.
StepCertificate certify_mann(const ConstantsBundle& c, double rho1);

/// Human-readable multi-line rendering.
std::string render(const StepCertificate& cert);

}  // namespace sgqvi
