#include "doctest.h"
#include "sgqvi/analysis.hpp"
#include "sgqvi/errors.hpp"
#include "sgqvi/generator.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace sgqvi;
using sgqvi::testing::Rng;

namespace {

ConstantsBundle ones() {
  ConstantsBundle c;
  c.alpha1 = c.alpha2 = c.beta1 = c.beta2 = 1.0;
  c.delta1 = c.delta2 = 1.0;
  return c;
}

SolverParams params(double rho1, double rho2, double gamma) {
  SolverParams p;
  p.rho1 = rho1;
  p.rho2 = rho2;
  p.gamma = gamma;
  return p;
}

// A bundle that a real instance could produce: alpha <= beta delta and
// sigma <= delta - 1.
ConstantsBundle random_bundle(Rng& rng) {
  ConstantsBundle c;
  c.delta1 = rng.uniform(0.8, 2.0);
  c.delta2 = rng.uniform(0.8, 2.0);
  c.beta1 = rng.uniform(0.1, 3.0);
  c.beta2 = rng.uniform(0.1, 3.0);
  c.alpha1 = c.beta1 * c.delta1 * rng.uniform(0.6, 1.0);
  c.alpha2 = c.beta2 * c.delta2 * rng.uniform(0.6, 1.0);
  c.sigma1 = std::max(0.0, c.delta1 - 1.0) * rng.uniform(0.0, 1.0);
  c.sigma2 = std::max(0.0, c.delta2 - 1.0) * rng.uniform(0.0, 1.0);
  c.nu1 = rng.uniform(0.0, 0.4);
  c.nu2 = rng.uniform(0.0, 0.4);
  c.norm_a = rng.uniform(0.2, 3.0);
  return c;
}

SolverParams random_params(Rng& rng, const ConstantsBundle& c) {
  return params(c.alpha1 / (c.beta1 * c.beta1) * rng.uniform(0.5, 1.5),
                c.alpha2 / (c.beta2 * c.beta2) * rng.uniform(0.5, 1.5),
                rng.uniform(0.01, 2.2) / (c.norm_a * c.norm_a));
}

// theta written out from scratch.
double theta_by_hand(const ConstantsBundle& c, const SolverParams& p) {
  const double t1 =
      (std::sqrt(std::max(0.0, c.delta1 * c.delta1 -
                                   2 * p.rho1 * c.alpha1 +
                                   p.rho1 * p.rho1 * c.beta1 * c.beta1)) +
       c.nu1) /
      std::sqrt(2 * c.sigma1 + 1);
  const double t2 =
      (std::sqrt(std::max(0.0, c.delta2 * c.delta2 -
                                   2 * p.rho2 * c.alpha2 +
                                   p.rho2 * p.rho2 * c.beta2 * c.beta2)) +
       c.nu2) /
      std::sqrt(2 * c.sigma2 + 1);
  return t1 * (1 + p.gamma * c.norm_a * c.norm_a * t2);
}

}  // namespace

TEST_CASE("theta examples") {
  ConstantsBundle c = ones();
  CHECK(compute_theta2(c, 1.0) == 0.0);
  CHECK(compute_theta1(c, 1.0) == 0.0);
  c.nu2 = 0.5;
  CHECK(compute_theta2(c, 1.0) == 0.5);

  // Numerator 1 over sqrt(2 * 1.5 + 1) = 2.
  ConstantsBundle d = ones();
  d.sigma2 = 1.5;
  d.nu2 = 1.0;
  CHECK(compute_theta2(d, 1.0) == 0.5);

  ConstantsBundle e = ones();
  e.delta1 = 1.7;
  e.sigma1 = 0.4;
  const double limit = 1.7 / std::sqrt(1.8);
  CHECK(compute_theta1(e, 1e-12) == doctest::Approx(limit).epsilon(1e-10));
  CHECK(std::abs(compute_theta1(e, 1e-6) - limit) <
        std::abs(compute_theta1(e, 1e-3) - limit));

  CHECK(combined_theta(0.5, 0.5, 1.0, 1.0) == 0.75);
  CHECK(combined_theta(0.5, 0.5, 0.25, 2.0) == 0.75);
  CHECK(compute_k1(ones(), 0.0) == 1.0);
}

TEST_CASE("infeasible radicand") {
  ConstantsBundle c = ones();
  c.alpha1 = 2.0;  // alpha > beta delta
  CHECK_THROWS_AS(compute_theta1(c, 1.0), InfeasibleConstantsError);
  CHECK_THROWS_AS(contraction_factor(1, 1, 1, 0, 0, -1.0),
                  std::invalid_argument);
  // Rounding-level negatives are clamped.
  CHECK(contraction_factor(1.0, 1.0, 1.0, 0.0, 0.0, 1.0) == 0.0);

  const auto cert = certify(c, params(1, 1, 1));
  CHECK_FALSE(cert.certified());
  CHECK(cert.reasons.front().find("theta1 infeasible") != std::string::npos);
}

TEST_CASE("rho1 interval") {
  const auto ri = rho1_interval(ones(), 0.0);
  CHECK(ri.k1 == 1.0);
  REQUIRE(ri.interval);
  CHECK(ri.interval->lo == 0.0);
  CHECK(ri.interval->hi == 2.0);
  CHECK(ri.violations.empty());

  // nu1 beyond sqrt(2 sigma1 + 1)/(1 + 2 theta2) drives k1 <= 0; with
  // delta1 <= |k1| the interval is empty.
  ConstantsBundle c = ones();
  c.nu1 = 2.5;
  const auto bad = rho1_interval(c, 0.0);
  CHECK(bad.k1 == -1.5);
  CHECK_FALSE(bad.interval);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().find("delta1 >= |k1|") != std::string::npos);
  CHECK_FALSE(certify(c, params(1, 1, 1)).certified());

  ConstantsBundle weak = ones();
  weak.alpha1 = 0.3;
  const auto w = rho1_interval(weak, 0.5);  // k1 = 0.5
  CHECK_FALSE(w.interval);
  CHECK(w.violations.size() == 1);
  CHECK(w.violations.front().find("alpha1 > beta1") != std::string::npos);
}

TEST_CASE("certify examples") {
  const auto ok = certify(ones(), params(1, 1, 1));
  CHECK(ok.certified());
  CHECK(ok.theta == 0.0);
  CHECK(ok.gamma_interval->hi == 2.0);

  const auto edge = certify(ones(), params(1, 1, 2.0));
  CHECK_FALSE(edge.certified());
  REQUIRE(edge.reasons.size() == 1);
  CHECK(edge.reasons.front().find("γ outside (0, 2/‖A‖²)") !=
        std::string::npos);

  // theta1 = theta2 = 0.5 with gamma |A|^2 = 1.
  ConstantsBundle c = ones();
  c.nu1 = 0.5;
  c.nu2 = 0.5;
  const auto direct = certify(c, params(1, 1, 1), CertifyMode::Contraction);
  CHECK(direct.theta1 == 0.5);
  CHECK(direct.theta2 == 0.5);
  CHECK(direct.theta == 0.75);
  CHECK(direct.certified());
  // The theorem's k1 = 1/2 - 1/2 = 0 leaves no admissible rho1.
  CHECK_FALSE(certify(c, params(1, 1, 1)).certified());

  // Every violation is named.
  const auto many = certify(ones(), params(-1, -1, 5));
  CHECK(many.reasons.size() >= 3);

  ConstantsBundle zero_a = ones();
  zero_a.norm_a = 0.0;
  CHECK_FALSE(certify(zero_a, params(1, 1, 1)).certified());
}

TEST_CASE("specializations") {
  Rng rng(31);
  for (int t = 0; t < 2000; ++t) {
    ConstantsBundle c = random_bundle(rng);
    const double theta2 = rng.uniform(0.0, 0.5);

    // g = I: k1 = 1/(1 + 2 theta2) - nu1, condition alpha > beta sqrt(1-k^2).
    ConstantsBundle gi = c;
    gi.delta1 = 1.0;
    gi.sigma1 = 0.0;
    gi.alpha1 = std::min(gi.alpha1, gi.beta1);
    const double k = 1.0 / (1.0 + 2.0 * theta2) - gi.nu1;
    CHECK(compute_k1(gi, theta2) == doctest::Approx(k).epsilon(1e-14));
    const bool admissible =
        std::abs(k) < 1.0 && gi.alpha1 > gi.beta1 * std::sqrt(1.0 - k * k);
    const auto ri = rho1_interval(gi, theta2);
    CHECK(ri.interval.has_value() == admissible);
    if (admissible) {
      const double r =
          std::sqrt(gi.alpha1 * gi.alpha1 - gi.beta1 * gi.beta1 * (1 - k * k)) /
          (gi.beta1 * gi.beta1);
      const double centre = gi.alpha1 / (gi.beta1 * gi.beta1);
      CHECK(ri.interval->hi == doctest::Approx(centre + r).epsilon(1e-12));
      CHECK(ri.interval->lo ==
            doctest::Approx(std::max(0.0, centre - r)).epsilon(1e-12));
      const double rho = rng.uniform(ri.interval->lo, ri.interval->hi);
      if (ri.interval->contains(rho)) {
        CHECK(compute_theta1(gi, rho) <= 1.0 / (1.0 + 2.0 * theta2) + 1e-12);
      }
    }

    // Fixed sets: k1 = sqrt(2 sigma1 + 1)/(1 + 2 theta2) and theta2 loses nu.
    ConstantsBundle fs = c;
    fs.nu1 = fs.nu2 = 0.0;
    CHECK(compute_k1(fs, theta2) ==
          doctest::Approx(std::sqrt(2 * fs.sigma1 + 1) / (1 + 2 * theta2))
              .epsilon(1e-14));
    const double rho2 = fs.alpha2 / (fs.beta2 * fs.beta2);
    CHECK(compute_theta2(fs, rho2) ==
          doctest::Approx(std::sqrt(std::max(
                              0.0, (fs.delta2 * fs.delta2 -
                                    2 * rho2 * fs.alpha2 +
                                    rho2 * rho2 * fs.beta2 * fs.beta2) /
                                       (2 * fs.sigma2 + 1))))
              .epsilon(1e-12));

    // Single-space degeneration: k1 = 1 - nu1, theta = theta1.
    ConstantsBundle q = gi;
    const double rho1 = q.alpha1 / (q.beta1 * q.beta1);
    const auto m = certify_mann(q, rho1);
    CHECK(m.k1 == doctest::Approx(1.0 - q.nu1).epsilon(1e-14));
    CHECK(m.theta2 == 0.0);
    CHECK(m.theta == m.theta1);
    const bool mann_ok =
        std::abs(1 - q.nu1) < 1 &&
        q.alpha1 > q.beta1 * std::sqrt(1 - (1 - q.nu1) * (1 - q.nu1)) &&
        m.theta1 < 1.0;
    CHECK(m.certified() == mann_ok);
  }
}

TEST_CASE("certified bundles contract") {
  Rng rng(2024);
  int certified = 0, by_theorem = 0;
  for (int t = 0; t < 10000; ++t) {
    const ConstantsBundle c = random_bundle(rng);
    const SolverParams p = random_params(rng, c);
    const auto cert = certify(c, p);
    if (cert.certified()) {
      ++certified;
      CHECK(theta_by_hand(c, p) < 1.0);
      CHECK(cert.theta == doctest::Approx(theta_by_hand(c, p)).epsilon(1e-12));
    }
    // The displayed conditions on their own, when k1 > 0.
    const auto ri = rho1_interval(c, compute_theta2(c, p.rho2));
    if (ri.interval && ri.k1 > 0 && ri.interval->contains(p.rho1) &&
        p.gamma * c.norm_a * c.norm_a < 2.0) {
      ++by_theorem;
      CHECK(theta_by_hand(c, p) < 1.0);
    }
    if (certify(c, p, CertifyMode::Contraction).certified()) {
      CHECK(theta_by_hand(c, p) < 1.0);
    }
  }
  CHECK(certified > 100);
  CHECK(by_theorem >= certified);
}

TEST_CASE("displayed hypotheses with negative k1 do not bound theta") {
  ConstantsBundle c = ones();
  c.nu1 = 1.0;
  c.nu2 = 0.2;  // theta2 = 0.2 at rho2 = 1
  const double theta2 = compute_theta2(c, 1.0);
  CHECK(theta2 == doctest::Approx(0.2));
  const auto ri = rho1_interval(c, theta2);
  CHECK(ri.k1 < 0.0);
  REQUIRE(ri.interval);
  CHECK(ri.interval->contains(1.0));
  CHECK(compute_theta1(c, 1.0) == 1.0);
  const auto cert = certify(c, params(1, 1, 1));
  CHECK_FALSE(cert.certified());
  REQUIRE(cert.reasons.size() == 1);
  CHECK(cert.reasons.front().rfind("theta < 1", 0) == 0);
}

TEST_CASE("theta is monotone in sigma and nu") {
  Rng rng(5);
  for (int t = 0; t < 5000; ++t) {
    const ConstantsBundle c = random_bundle(rng);
    const double rho = c.alpha1 / (c.beta1 * c.beta1) * rng.uniform(0.5, 1.5);
    // Both spaces share the first space's constants so one rho fits both.
    ConstantsBundle base = c;
    base.alpha2 = c.alpha1;
    base.beta2 = c.beta1;
    base.delta2 = c.delta1;
    base.sigma2 = c.sigma1;
    base.nu2 = c.nu1;
    ConstantsBundle s = base, v = base;
    s.sigma1 = s.sigma2 = base.sigma1 + rng.uniform(0.0, 1.0);
    v.nu1 = v.nu2 = base.nu1 + rng.uniform(0.0, 1.0);
    CHECK(compute_theta1(s, rho) <= compute_theta1(base, rho));
    CHECK(compute_theta2(s, rho) <= compute_theta2(base, rho));
    CHECK(compute_theta1(v, rho) >= compute_theta1(base, rho));
    CHECK(compute_theta2(v, rho) >= compute_theta2(base, rho));
  }
}

TEST_CASE("constants of a generated instance") {
  GeneratorConfig cfg;
  cfg.seed = 4;
  cfg.n1 = 3;
  cfg.n2 = 2;
  const ProblemSpec s = generate(cfg);
  const ConstantsBundle c = certify_constants(s);
  CHECK(c.norm_a == doctest::Approx(s.a.operator_norm()));
  CHECK(c.alpha1 > 0.0);
  CHECK(c.alpha1 <= c.beta1 * c.delta1 + 1e-12);
  CHECK(c.sigma1 <= c.delta1 - 1.0 + 1e-12);
  CHECK(certify(c, *s.default_params).certified());
  CHECK_FALSE(render(certify(c, *s.default_params)).empty());
}
