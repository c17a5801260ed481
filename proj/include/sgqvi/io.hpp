#pragma once

// Problem files (JSON) and trace export (CSV).
//
// Problem file layout:
//   {
//     "dims": [n1, n2],
//     "A": [[...], ...],                      row-major, n2 rows of n1
//     "sets": {"C1": <moving>, "C2": <moving>},
//     "operators": {"f1": <op>, "f2": <op>, "g1": <op>, "g2": <op>},
//     "known_solution": [...],                optional
//     "params": {"rho1", "rho2", "gamma", "alpha_schedule", "tol",
//                "max_iters"}                 optional, all keys optional
//   }
//   <moving> = {"base": <set>, "translation": <op>} or a bare <set>
//   <set>    = {"type": "whole"} | {"type": "box", "lower", "upper"}
//            | {"type": "ball", "center", "radius"}
//            | {"type": "halfspace", "normal", "offset"}
//            | {"type": "affine", "basis": [[...]], "point"}
//   <op>     = {"type": "affine", "matrix", "offset"} | {"type": "scaling", "s"}
//            | {"type": "translation", "c"} | {"type": "zero"}
//            | {"type": "identity"}

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "sgqvi/analysis.hpp"
#include "sgqvi/problem.hpp"
#include "sgqvi/solver.hpp"

namespace sgqvi {

using Json = nlohmann::json;

/// Throws ParseError with a line/column or JSON-pointer location.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);

Json to_json(const ProblemSpec& spec);
std::string serialize_problem(const ProblemSpec& spec);
void save_problem(const std::string& path, const ProblemSpec& spec);

Json to_json(const SolverParams& p);
/// Fills the keys present in `j` over `base`.
SolverParams params_from_json(const Json& j, SolverParams base = {});

Json to_json(const StepCertificate& cert);
Json to_json(const ConstantsBundle& c);

/// Writes '#'-prefixed header lines (parameters, theta) followed by the
/// columns iter,residual,error,bound_factor and, when `dump_coords` is set,
/// x_0.., y_0.., z_0... Missing values are left empty.
void write_trace_csv(std::ostream& os, const IterateTrace& trace,
                     bool dump_coords = false);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace sgqvi
