// Command-line front end: solve, certify, generate and verify problem files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgqvi/analysis.hpp"
#include "sgqvi/errors.hpp"
#include "sgqvi/generator.hpp"
#include "sgqvi/harness.hpp"
#include "sgqvi/io.hpp"
#include "sgqvi/solver.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kRejected = 3,
  kNumerical = 4,
};

struct ParamFlags {
  std::optional<double> rho1, rho2, gamma, tol;
  std::optional<long> max_iters;
  std::optional<std::string> schedule;

  void add(CLI::App* app) {
    app->add_option("--rho1", rho1, "First-space step rho1 > 0");
    app->add_option("--rho2", rho2, "Second-space step rho2 > 0");
    app->add_option("--gamma", gamma, "Coupling step gamma > 0");
    app->add_option("--alpha-schedule", schedule,
                    "Relaxation: constant:<a> or harmonic");
    app->add_option("--tol", tol, "Residual stopping tolerance");
    app->add_option("--max-iters", max_iters, "Iteration cap");
  }

  sgqvi::SolverParams resolve(const sgqvi::ProblemSpec& spec) const {
    sgqvi::SolverParams p = spec.default_params.value_or(sgqvi::SolverParams{});
    if (rho1) p.rho1 = *rho1;
    if (rho2) p.rho2 = *rho2;
    if (gamma) p.gamma = *gamma;
    if (tol) p.tol = *tol;
    if (max_iters) p.max_iters = *max_iters;
    if (schedule) p.schedule = sgqvi::parse_schedule(*schedule);
    return p;
  }
};

sgqvi::Vector start_point(const sgqvi::ProblemSpec& spec,
                          const std::vector<double>& x0) {
  if (x0.empty()) return sgqvi::Vector::Zero(spec.n1);
  if (static_cast<Eigen::Index>(x0.size()) != spec.n1) {
    throw std::invalid_argument("--x0 needs " + std::to_string(spec.n1) +
                                " values");
  }
  return Eigen::Map<const sgqvi::Vector>(x0.data(),
                                         static_cast<Eigen::Index>(x0.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection solver for split general quasi-variational "
               "inequality problems"};
  app.require_subcommand(1);

  std::string spec_path;
  ParamFlags flags;
  bool json = false;
  bool direct = false;
  std::vector<double> x0;

  auto* solve_cmd = app.add_subcommand("solve", "Run the projection iteration");
  std::string trace_path;
  bool dump_coords = false;
  bool strict = false;
  solve_cmd->add_option("spec", spec_path, "Problem file")->required();
  flags.add(solve_cmd);
  solve_cmd->add_option("--trace", trace_path, "Write the trace as CSV");
  solve_cmd->add_flag("--dump-coords", dump_coords,
                      "Include x, y, z coordinates in the trace");
  solve_cmd->add_flag("--strict", strict,
                      "Refuse to run unless the parameters are certified");
  solve_cmd->add_option("--x0", x0, "Start point (default: zero)");
  solve_cmd->add_flag("--json", json, "Print a JSON summary");

  auto* certify_cmd =
      app.add_subcommand("certify", "Check the convergence conditions");
  certify_cmd->add_option("spec", spec_path, "Problem file")->required();
  flags.add(certify_cmd);
  certify_cmd->add_flag("--direct", direct,
                        "Only require theta < 1 and the gamma interval");
  certify_cmd->add_flag("--json", json, "Print the certificate as JSON");

  auto* gen_cmd = app.add_subcommand("generate", "Generate a certified instance");
  std::string family = "interior";
  std::vector<long> dims{2, 2};
  std::uint64_t seed = 1;
  std::string out_path;
  gen_cmd->add_option("--family", family, "interior or boundary");
  gen_cmd->add_option("--dims", dims, "n1 n2")->expected(2);
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("-o,--output", out_path, "Output file")->required();

  auto* verify_cmd = app.add_subcommand(
      "verify", "Certify, solve and cross-check against the oracle");
  verify_cmd->add_option("spec", spec_path, "Problem file")->required();
  flags.add(verify_cmd);
  verify_cmd->add_option("--x0", x0, "Start point (default: zero)");
  verify_cmd->add_flag("--direct", direct,
                       "Only require theta < 1 and the gamma interval");
  verify_cmd->add_flag("--json", json, "Print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto mode =
      direct ? sgqvi::CertifyMode::Contraction : sgqvi::CertifyMode::Hypotheses;

  try {
    if (*gen_cmd) {
      sgqvi::GeneratorConfig cfg;
      cfg.family = sgqvi::parse_family(family);
      cfg.n1 = dims.at(0);
      cfg.n2 = dims.at(1);
      cfg.seed = seed;
      sgqvi::save_problem(out_path, sgqvi::generate(cfg));
      std::cout << "wrote " << out_path << '\n';
      return kOk;
    }

    const sgqvi::ProblemSpec spec = sgqvi::load_problem(spec_path);
    const sgqvi::SolverParams params = flags.resolve(spec);
    sgqvi::validate(params);

    if (*certify_cmd) {
      const auto cert =
          sgqvi::certify(sgqvi::certify_constants(spec), params, mode);
      if (json) {
        std::cout << sgqvi::to_json(cert).dump(2) << '\n';
      } else {
        std::cout << sgqvi::render(cert);
      }
      return cert.certified() ? kOk : kRejected;
    }

    if (*verify_cmd) {
      sgqvi::VerifyOptions vo;
      vo.mode = mode;
      const auto report =
          sgqvi::verify(spec, params, start_point(spec, x0), vo);
      if (json) {
        std::cout << sgqvi::to_json(report).dump(2) << '\n';
      } else {
        std::cout << sgqvi::render(report);
      }
      return report.passed() ? kOk : kRejected;
    }

    // solve
    const auto cert = sgqvi::certify(sgqvi::certify_constants(spec), params);
    if (strict && !cert.certified()) {
      std::cerr << "refusing to solve with uncertified parameters\n"
                << sgqvi::render(cert);
      return kRejected;
    }
    sgqvi::SolveOptions so;
    so.keep_iterates = dump_coords;
    if (cert.certified()) so.theta = cert.theta;
    const auto run = sgqvi::solve(spec, params, start_point(spec, x0), so);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      if (!out) throw std::runtime_error("cannot write " + trace_path);
      sgqvi::write_trace_csv(out, run.trace, dump_coords);
    }
    if (json) {
      sgqvi::Json j;
      j["status"] = sgqvi::to_string(run.status);
      j["iterations"] = run.iterations;
      j["final_residual"] = run.final_residual;
      j["x"] = std::vector<double>(run.x.data(), run.x.data() + run.x.size());
      j["certificate"] = sgqvi::to_json(cert);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "status:     " << sgqvi::to_string(run.status) << '\n'
                << "iterations: " << run.iterations << '\n'
                << "residual:   " << run.final_residual << '\n'
                << "x:         ";
      for (Eigen::Index i = 0; i < run.x.size(); ++i) {
        std::cout << ' ' << sgqvi::format_double(run.x(i));
      }
      std::cout << '\n';
    }
    return run.status == sgqvi::SolveStatus::Converged ? kOk : kNumerical;
  } catch (const sgqvi::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const sgqvi::SingularOperatorError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const sgqvi::NoConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const sgqvi::InfeasibleConstantsError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const sgqvi::GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
