#include "sgqvi/harness.hpp"

#include <chrono>
#include <future>
#include <sstream>

namespace sgqvi {

long count_contraction_violations(const IterateTrace& trace, double slack) {
  long violations = 0;
  const auto& r = trace.records;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (!r[i].error || !r[i + 1].error || !r[i].bound_factor) continue;
    if (*r[i + 1].error > *r[i].bound_factor * *r[i].error + slack) {
      ++violations;
    }
  }
  return violations;
}

RunReport verify(const ProblemSpec& spec, const SolverParams& params,
                 const Vector& x0, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.variant = to_string(select_variant(spec));

  auto cert_job = std::async(std::launch::async, [&] {
    const ConstantsBundle c = certify_constants(spec);
    return std::make_pair(c, certify(c, params, options.mode));
  });
  auto oracle_job =
      std::async(std::launch::async, [&] {
        OracleOptions o;
        o.rho1 = params.rho1;
        o.rho2 = params.rho2;
        return oracle_solve(spec, o);
      });
  auto [constants, cert] = cert_job.get();
  report.constants = constants;
  report.certificate = cert;

  SolveOptions so;
  so.keep_iterates = false;
  if (cert.certified()) so.theta = cert.theta;
  const SolveResult run = solve(spec, params, x0, so);
  const OracleResult oracle = oracle_job.get();

  report.status = run.status;
  report.iterations = run.iterations;
  report.final_residual = run.final_residual;
  report.final_error = run.trace.records.back().error;
  report.relaxation_sum = relaxation_sum(params.schedule, run.iterations);
  report.contraction_violations =
      count_contraction_violations(run.trace, options.contraction_slack);
  report.oracle_converged = oracle.converged;
  if (oracle.converged) report.oracle_distance = (run.x - oracle.x).norm();

  auto& f = report.failures;
  if (!cert.certified()) f.push_back("certificate rejected");
  if (run.status != SolveStatus::Converged) {
    f.push_back("solver did not reach the residual tolerance");
  }
  if (report.contraction_violations > 0) {
    f.push_back("contraction bound violated " +
                std::to_string(report.contraction_violations) + " times");
  }
  if (!oracle.converged) {
    f.push_back("oracle did not converge");
  } else if (*report.oracle_distance > options.oracle_tolerance) {
    f.push_back("solver and oracle disagree");
  }
  if (spec.known_solution && report.final_error &&
      *report.final_error > options.oracle_tolerance) {
    f.push_back("solver far from the known solution");
  }

  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

std::string render(const RunReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "variant:                " << r.variant << '\n'
     << "certificate:            "
     << (r.certificate.certified() ? "Certified" : "Rejected")
     << " (theta = " << r.certificate.theta << ")\n"
     << "status:                 " << to_string(r.status) << '\n'
     << "iterations:             " << r.iterations << '\n'
     << "sum of relaxations:     " << r.relaxation_sum << '\n'
     << "final residual:         " << r.final_residual << '\n';
  if (r.final_error) {
    os << "final error:            " << *r.final_error << '\n';
  }
  os << "contraction violations: " << r.contraction_violations << '\n'
     << "oracle:                 "
     << (r.oracle_converged ? "converged" : "not converged") << '\n';
  if (r.oracle_distance) {
    os << "solver-oracle distance: " << *r.oracle_distance << '\n';
  }
  os << "wall time (s):          " << r.wall_seconds << '\n'
     << "result:                 " << (r.passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& why : r.certificate.reasons) os << "  violated: " << why << '\n';
  for (const auto& why : r.failures) os << "  failure: " << why << '\n';
  return os.str();
}

Json to_json(const RunReport& r) {
  Json j;
  j["variant"] = r.variant;
  j["constants"] = to_json(r.constants);
  j["certificate"] = to_json(r.certificate);
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["relaxation_sum"] = r.relaxation_sum;
  j["final_residual"] = r.final_residual;
  j["final_error"] = r.final_error ? Json(*r.final_error) : Json(nullptr);
  j["contraction_violations"] = r.contraction_violations;
  j["oracle_converged"] = r.oracle_converged;
  j["oracle_distance"] =
      r.oracle_distance ? Json(*r.oracle_distance) : Json(nullptr);
  j["wall_seconds"] = r.wall_seconds;
  j["passed"] = r.passed();
  j["failures"] = r.failures;
  return j;
}

}  // namespace sgqvi
