#pragma once

// Random problem instances with a known solution x*.

#include <cstdint>
#include <string>
#include <vector>

#include "sgqvi/problem.hpp"

namespace sgqvi {

enum class Family {
  /// f_i vanishes at the solution and g_i(x*) lies inside C_i(x*).
  InteriorZero,
  /// g_i(x*) sits on a box face and f_i(x*) points along the inward normal.
  BoundarySolution,
};

std::string to_string(Family f);
/// "interior" / "boundary"; throws std::invalid_argument otherwise.
Family parse_family(const std::string& text);

enum class SetKind { Whole, Box, Ball, Halfspace, Affine };

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorConfig {
  Eigen::Index n1 = 2;
  Eigen::Index n2 = 2;
  std::uint64_t seed = 1;
  Family family = Family::InteriorZero;

  /// f_i has linear part scale * (D_i + f_noise * R) with |R| = 1.
  Range f_scale{0.5, 2.0};
  double f_noise = 0.03;
  /// g_i has linear part d * (I + g_noise * R); {1, 1} with zero noise
  /// and zero offset gives g = I.
  Range g_scale{1.0, 1.5};
  double g_noise = 0.02;
  /// Target nu_i; the translation gets Lipschitz constant nu / 2. {0, 0}
  /// gives fixed sets.
  Range nu{0.0, 0.05};
  Range a_norm{0.5, 2.0};
  /// Entries of x* are uniform in [-r, r]; 0 pins x* = 0.
  double solution_radius = 1.0;
  /// Base-set kinds for the interior family (the boundary family always
  /// uses boxes).
  std::vector<SetKind> set_kinds{SetKind::Box, SetKind::Ball,
                                 SetKind::Halfspace, SetKind::Whole,
                                 SetKind::Affine};
  /// Use A = I (requires n1 == n2).
  bool identity_a = false;
  int max_attempts = 200;
};

/// Draws instances until one passes the default certificate, and stores the
/// parameters it was certified with as the spec's default parameters.
/// Throws GenerationError for inconsistent ranges or when no draw certifies.
ProblemSpec generate(const GeneratorConfig& cfg);

}  // namespace sgqvi
