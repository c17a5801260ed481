#pragma once

#include <optional>
#include <string>
#include <variant>

#include "sgqvi/hilbert.hpp"
#include "sgqvi/operators.hpp"
#include "sgqvi/projection.hpp"

namespace sgqvi {

/// alpha^n = value for every n.
struct ConstantSchedule {
  double value = 0.5;
};

/// alpha^n = 1 / (n + 2), i.e. 1/k for the 1-based step count k = n + 1,
/// skipping k = 1 so every value lies strictly inside (0, 1).
struct HarmonicSchedule {};

using RelaxationSchedule = std::variant<ConstantSchedule, HarmonicSchedule>;

double relaxation(const RelaxationSchedule& s, long n);
/// Sum of alpha^n for n in [0, count).
double relaxation_sum(const RelaxationSchedule& s, long count);
/// "constant:0.5" / "harmonic". Throws std::invalid_argument.
RelaxationSchedule parse_schedule(const std::string& text);
std::string to_string(const RelaxationSchedule& s);

struct SolverParams {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double gamma = 1.0;
  RelaxationSchedule schedule = ConstantSchedule{0.5};
  long max_iters = 10'000;
  double tol = 1e-10;
};

/// Throws std::invalid_argument when a parameter is outside its domain:
/// rho_i, gamma, tol > 0, max_iters >= 1, schedule values in (0, 1).
void validate(const SolverParams& p);

/// One instance of the split general quasi-variational inequality problem.
struct ProblemSpec {
  Eigen::Index n1 = 1;
  Eigen::Index n2 = 1;
  LinearMap a = LinearMap(Matrix::Identity(1, 1));
  MovingSet c1;
  MovingSet c2;
  OperatorModel f1;
  OperatorModel f2;
  GMap g1;
  GMap g2;
  std::optional<Vector> known_solution;
  std::optional<SolverParams> default_params;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&);
};

/// Throws DimensionError if any component disagrees with (n1, n2).
void check_dimensions(const ProblemSpec& spec);

enum class AlgorithmVariant {
  General,        // moving sets, general g
  IdentityG,      // g = I, moving sets
  FixedSets,      // fixed sets, general g
  FixedIdentity,  // fixed sets and g = I
  Mann,           // single-space quasi-variational degeneration
};

std::string to_string(AlgorithmVariant v);

AlgorithmVariant select_variant(const ProblemSpec& spec);

}  // namespace sgqvi
