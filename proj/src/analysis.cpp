#include "sgqvi/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sgqvi/errors.hpp"

namespace sgqvi {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ConstantsBundle certify_constants(const ProblemSpec& spec) {
  ConstantsBundle c;
  c.alpha1 = certify_relative(spec.f1, spec.g1, spec.n1);
  c.alpha2 = certify_relative(spec.f2, spec.g2, spec.n2);
  c.beta1 = lipschitz_constant(spec.f1);
  c.beta2 = lipschitz_constant(spec.f2);
  c.delta1 = spec.g1.delta();
  c.delta2 = spec.g2.delta();
  c.sigma1 = spec.g1.sigma();
  c.sigma2 = spec.g2.sigma();
  c.nu1 = certify_nu(spec.c1);
  c.nu2 = certify_nu(spec.c2);
  c.norm_a = spec.a.operator_norm();
  return c;
}

double contraction_factor(double alpha, double beta, double delta,
                          double sigma, double nu, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("step size must be > 0");
  const double scale = delta * delta + rho * rho * beta * beta;
  double radicand = delta * delta - 2.0 * rho * alpha + rho * rho * beta * beta;
  if (radicand < 0.0) {
    // Rounding can push an exactly-zero radicand slightly negative.
    if (radicand < -1e-14 * scale) {
      throw InfeasibleConstantsError(
          "negative radicand delta^2 - 2 rho alpha + rho^2 beta^2 = " +
          fmt(radicand));
    }
    radicand = 0.0;
  }
  return (std::sqrt(radicand) + nu) / std::sqrt(2.0 * sigma + 1.0);
}

double compute_theta1(const ConstantsBundle& c, double rho1) {
  return contraction_factor(c.alpha1, c.beta1, c.delta1, c.sigma1, c.nu1,
                            rho1);
}

double compute_theta2(const ConstantsBundle& c, double rho2) {
  return contraction_factor(c.alpha2, c.beta2, c.delta2, c.sigma2, c.nu2,
                            rho2);
}

double compute_k1(const ConstantsBundle& c, double theta2) {
  return std::sqrt(2.0 * c.sigma1 + 1.0) / (1.0 + 2.0 * theta2) - c.nu1;
}

double combined_theta(double theta1, double theta2, double gamma,
                      double norm_a) {
  return theta1 * (1.0 + gamma * norm_a * norm_a * theta2);
}

Rho1Interval rho1_interval(const ConstantsBundle& c, double theta2) {
  Rho1Interval out;
  out.k1 = compute_k1(c, theta2);
  const double k1 = out.k1;
  if (!(c.beta1 > 0.0)) {
    out.violations.push_back("beta1 > 0 (f1 must not be constant)");
  }
  if (!(c.delta1 >= std::abs(k1))) {
    out.violations.push_back("delta1 >= |k1| (delta1 = " + fmt(c.delta1) +
                             ", k1 = " + fmt(k1) + ")");
  }
  const double gap = c.delta1 * c.delta1 - k1 * k1;
  if (gap >= 0.0) {
    const double bound = c.beta1 * std::sqrt(gap);
    if (!(c.alpha1 > bound)) {
      out.violations.push_back("alpha1 > beta1 sqrt(delta1^2 - k1^2) (" +
                               fmt(c.alpha1) + " vs " + fmt(bound) + ")");
    }
  }
  if (!out.violations.empty()) return out;
  const double b2 = c.beta1 * c.beta1;
  const double r = std::sqrt(c.alpha1 * c.alpha1 - b2 * gap) / b2;
  const double center = c.alpha1 / b2;
  out.interval = Interval{std::max(0.0, center - r), center + r};
  return out;
}

StepCertificate certify(const ConstantsBundle& c, const SolverParams& params,
                        CertifyMode mode) {
  StepCertificate cert;
  auto& why = cert.reasons;

  if (!(params.rho1 > 0.0)) why.push_back("rho1 > 0");
  if (!(params.rho2 > 0.0)) why.push_back("rho2 > 0");
  if (c.norm_a > 0.0) {
    cert.gamma_interval = Interval{0.0, 2.0 / (c.norm_a * c.norm_a)};
    if (!cert.gamma_interval->contains(params.gamma)) {
      why.push_back("γ outside (0, 2/‖A‖²) (gamma = " +
                    fmt(params.gamma) + ", 2/|A|^2 = " +
                    fmt(cert.gamma_interval->hi) + ")");
    }
  } else {
    why.push_back("|A| > 0 (gamma interval undefined for the zero map)");
  }

  bool thetas_ok = params.rho1 > 0.0 && params.rho2 > 0.0;
  if (thetas_ok) {
    try {
      cert.theta2 = compute_theta2(c, params.rho2);
    } catch (const InfeasibleConstantsError& e) {
      why.push_back(std::string("theta2 infeasible: ") + e.what());
      thetas_ok = false;
    }
    try {
      cert.theta1 = compute_theta1(c, params.rho1);
    } catch (const InfeasibleConstantsError& e) {
      why.push_back(std::string("theta1 infeasible: ") + e.what());
      thetas_ok = false;
    }
  }

  if (thetas_ok) {
    cert.k1 = compute_k1(c, cert.theta2);
    if (mode == CertifyMode::Hypotheses) {
      const auto ri = rho1_interval(c, cert.theta2);
      cert.rho1_interval = ri.interval;
      for (const auto& v : ri.violations) why.push_back(v);
      if (ri.interval && !ri.interval->contains(params.rho1)) {
        why.push_back("rho1 outside (" + fmt(ri.interval->lo) + ", " +
                      fmt(ri.interval->hi) + ") (rho1 = " + fmt(params.rho1) +
                      ")");
      }
    }
    cert.theta = combined_theta(cert.theta1, cert.theta2, params.gamma,
                                c.norm_a);
    if (!(cert.theta < 1.0)) {
      why.push_back("theta < 1 (theta = " + fmt(cert.theta) + ")");
    }
  } else {
    cert.theta = std::numeric_limits<double>::infinity();
  }

  cert.verdict = why.empty() ? Verdict::Certified : Verdict::Rejected;
  return cert;
}

StepCertificate certify_mann(const ConstantsBundle& c, double rho1) {
  ConstantsBundle m = c;
  m.delta1 = 1.0;
  m.sigma1 = 0.0;
  StepCertificate cert;
  cert.theta2 = 0.0;
  if (!(rho1 > 0.0)) {
    cert.reasons.push_back("rho1 > 0");
    cert.theta = std::numeric_limits<double>::infinity();
    return cert;
  }
  try {
    cert.theta1 = compute_theta1(m, rho1);
  } catch (const InfeasibleConstantsError& e) {
    cert.reasons.push_back(std::string("theta1 infeasible: ") + e.what());
    cert.theta = std::numeric_limits<double>::infinity();
    return cert;
  }
  const auto ri = rho1_interval(m, 0.0);
  cert.k1 = ri.k1;
  cert.rho1_interval = ri.interval;
  for (const auto& v : ri.violations) cert.reasons.push_back(v);
  if (ri.interval && !ri.interval->contains(rho1)) {
    cert.reasons.push_back("rho1 outside (" + fmt(ri.interval->lo) + ", " +
                           fmt(ri.interval->hi) + ")");
  }
  cert.theta = cert.theta1;
  if (!(cert.theta < 1.0)) {
    cert.reasons.push_back("theta < 1 (theta = " + fmt(cert.theta) + ")");
  }
  cert.verdict =
      cert.reasons.empty() ? Verdict::Certified : Verdict::Rejected;
  return cert;
}

std::string render(const StepCertificate& cert) {
  std::ostringstream os;
  os.precision(10);
  os << "verdict: " << (cert.certified() ? "Certified" : "Rejected") << '\n'
     << "theta1:  " << cert.theta1 << '\n'
     << "theta2:  " << cert.theta2 << '\n'
     << "k1:      " << cert.k1 << '\n'
     << "theta:   " << cert.theta << '\n';
  if (cert.rho1_interval) {
    os << "rho1 in: (" << cert.rho1_interval->lo << ", "
       << cert.rho1_interval->hi << ")\n";
  }
  if (cert.gamma_interval) {
    os << "gamma in: (" << cert.gamma_interval->lo << ", "
       << cert.gamma_interval->hi << ")\n";
  }
  for (const auto& r : cert.reasons) os << "violated: " << r << '\n';
  return os.str();
}

}  // namespace sgqvi
