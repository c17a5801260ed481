#include "sgqvi/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sgqvi/errors.hpp"

namespace sgqvi {

namespace {

// Cursor into the document that remembers its JSON pointer for diagnostics.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_.empty() ? "/" : path_, what);
  }

  bool has(const char* key) const {
    return j_.is_object() && j_.contains(key);
  }

  Node at(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) {
      throw ParseError(path_ + "/" + key, "missing required field");
    }
    return Node(j_.at(key), path_ + "/" + key);
  }

  Node at(std::size_t i) const {
    return Node(j_.at(i), path_ + "/" + std::to_string(i));
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }

  long integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<long>();
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  Vector vector() const {
    if (!j_.is_array()) fail("expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(j_.size()));
    for (std::size_t i = 0; i < j_.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = at(i).number();
    }
    return v;
  }

  Vector vector(Eigen::Index expected) const {
    Vector v = vector();
    if (v.size() != expected) {
      fail("expected " + std::to_string(expected) + " entries, got " +
           std::to_string(v.size()));
    }
    return v;
  }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols) const {
    if (!j_.is_array()) fail("expected an array of rows");
    if (static_cast<Eigen::Index>(j_.size()) != rows) {
      fail("expected " + std::to_string(rows) + " rows, got " +
           std::to_string(j_.size()));
    }
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      m.row(r) = at(static_cast<std::size_t>(r)).vector(cols).transpose();
    }
    return m;
  }

  // A matrix whose column count is taken from the first row.
  Matrix matrix_rows(Eigen::Index rows) const {
    if (!j_.is_array()) fail("expected an array of rows");
    Eigen::Index cols = 0;
    if (!j_.empty()) {
      if (!j_.at(0).is_array()) at(std::size_t{0}).fail("expected an array of numbers");
      cols = static_cast<Eigen::Index>(j_.at(0).size());
    }
    return matrix(rows, cols);
  }

 private:
  const Json& j_;
  std::string path_;
};

template <class F>
auto wrap(const Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    node.fail(e.what());
  }
}

OperatorModel parse_operator(const Node& node, Eigen::Index n) {
  const std::string type = node.at("type").string();
  return wrap(node, [&]() -> OperatorModel {
    if (type == "affine") {
      return Affine{node.at("matrix").matrix(n, n),
                    node.has("offset") ? node.at("offset").vector(n)
                                       : Vector(Vector::Zero(n))};
    }
    if (type == "scaling") return Scaling{node.at("s").number()};
    if (type == "translation") return Translation{node.at("c").vector(n)};
    if (type == "zero") return Zero{};
    if (type == "identity") return OperatorModel::identity();
    node.at("type").fail("unknown operator type '" + type + "'");
  });
}

ConvexSet parse_set(const Node& node, Eigen::Index n) {
  const std::string type = node.at("type").string();
  return wrap(node, [&]() -> ConvexSet {
    if (type == "whole") return WholeSpace{};
    if (type == "box") {
      return Box{node.at("lower").vector(n), node.at("upper").vector(n)};
    }
    if (type == "ball") {
      return Ball{node.at("center").vector(n), node.at("radius").number()};
    }
    if (type == "halfspace") {
      return Halfspace{node.at("normal").vector(n), node.at("offset").number()};
    }
    if (type == "affine") {
      return AffineSet{node.at("basis").matrix_rows(n),
                       node.at("point").vector(n)};
    }
    node.at("type").fail("unknown set type '" + type + "'");
  });
}

MovingSet parse_moving(const Node& node, Eigen::Index n) {
  if (!node.has("base")) return MovingSet(parse_set(node, n));
  ConvexSet base = parse_set(node.at("base"), n);
  OperatorModel m = node.has("translation")
                        ? parse_operator(node.at("translation"), n)
                        : OperatorModel(Zero{});
  return wrap(node, [&] { return MovingSet(std::move(base), std::move(m)); });
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json mat_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    a.push_back(vec_json(m.row(r).transpose()));
  }
  return a;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json op_json(const OperatorModel& op) {
  if (op.is_identity() && std::holds_alternative<Scaling>(op.model())) {
    return {{"type", "identity"}};
  }
  return std::visit(
      overloaded{
          [](const Affine& a) -> Json {
            return {{"type", "affine"},
                    {"matrix", mat_json(a.matrix)},
                    {"offset", vec_json(a.offset)}};
          },
          [](const Scaling& s) -> Json {
            return {{"type", "scaling"}, {"s", s.s}};
          },
          [](const Translation& t) -> Json {
            return {{"type", "translation"}, {"c", vec_json(t.c)}};
          },
          [](const Zero&) -> Json { return {{"type", "zero"}}; },
      },
      op.model());
}

Json set_json(const ConvexSet& c) {
  return std::visit(
      overloaded{
          [](const WholeSpace&) -> Json { return {{"type", "whole"}}; },
          [](const Box& b) -> Json {
            return {{"type", "box"},
                    {"lower", vec_json(b.lower)},
                    {"upper", vec_json(b.upper)}};
          },
          [](const Ball& b) -> Json {
            return {{"type", "ball"},
                    {"center", vec_json(b.center)},
                    {"radius", b.radius}};
          },
          [](const Halfspace& h) -> Json {
            return {{"type", "halfspace"},
                    {"normal", vec_json(h.normal)},
                    {"offset", h.offset}};
          },
          [](const AffineSet& a) -> Json {
            return {{"type", "affine"},
                    {"basis", mat_json(a.basis)},
                    {"point", vec_json(a.point)}};
          },
      },
      c.set());
}

Json moving_json(const MovingSet& m) {
  return {{"base", set_json(m.base())},
          {"translation", op_json(m.translation())}};
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text,
                                             std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     "malformed JSON");
  }
  const Node root(doc, "");
  if (!doc.is_object()) root.fail("expected a JSON object");

  ProblemSpec spec;
  const Node dims = root.at("dims");
  if (!dims.json().is_array() || dims.json().size() != 2) {
    dims.fail("expected [n1, n2]");
  }
  spec.n1 = dims.at(std::size_t{0}).integer();
  spec.n2 = dims.at(std::size_t{1}).integer();
  if (spec.n1 < 1) dims.at(std::size_t{0}).fail("dimension must be >= 1");
  if (spec.n2 < 1) dims.at(std::size_t{1}).fail("dimension must be >= 1");

  const Node a = root.at("A");
  spec.a = wrap(a, [&] { return LinearMap(a.matrix(spec.n2, spec.n1)); });

  const Node sets = root.at("sets");
  spec.c1 = parse_moving(sets.at("C1"), spec.n1);
  spec.c2 = parse_moving(sets.at("C2"), spec.n2);

  const Node ops = root.at("operators");
  spec.f1 = parse_operator(ops.at("f1"), spec.n1);
  spec.f2 = parse_operator(ops.at("f2"), spec.n2);
  const auto g = [&](const char* key, Eigen::Index n) {
    const Node gn = ops.at(key);
    OperatorModel op = parse_operator(gn, n);
    return wrap(gn, [&] { return GMap(std::move(op)); });
  };
  spec.g1 = ops.has("g1") ? g("g1", spec.n1) : GMap();
  spec.g2 = ops.has("g2") ? g("g2", spec.n2) : GMap();

  if (root.has("known_solution")) {
    spec.known_solution = root.at("known_solution").vector(spec.n1);
  }
  if (root.has("params")) {
    const Node p = root.at("params");
    spec.default_params = wrap(p, [&] { return params_from_json(p.json()); });
  }
  wrap(root, [&] {
    check_dimensions(spec);
    return 0;
  });
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(),
                     std::string(e.what()).substr(e.where().size() + 2));
  }
}

Json to_json(const SolverParams& p) {
  return {{"rho1", p.rho1},
          {"rho2", p.rho2},
          {"gamma", p.gamma},
          {"alpha_schedule", to_string(p.schedule)},
          {"tol", p.tol},
          {"max_iters", p.max_iters}};
}

SolverParams params_from_json(const Json& j, SolverParams base) {
  const Node node(j, "/params");
  if (!j.is_object()) node.fail("expected an object");
  if (node.has("rho1")) base.rho1 = node.at("rho1").number();
  if (node.has("rho2")) base.rho2 = node.at("rho2").number();
  if (node.has("gamma")) base.gamma = node.at("gamma").number();
  if (node.has("tol")) base.tol = node.at("tol").number();
  if (node.has("max_iters")) base.max_iters = node.at("max_iters").integer();
  if (node.has("alpha_schedule")) {
    const Node s = node.at("alpha_schedule");
    base.schedule = wrap(s, [&] { return parse_schedule(s.string()); });
  }
  return base;
}

Json to_json(const ProblemSpec& spec) {
  Json j;
  j["dims"] = {spec.n1, spec.n2};
  j["A"] = mat_json(spec.a.matrix());
  j["sets"] = {{"C1", moving_json(spec.c1)}, {"C2", moving_json(spec.c2)}};
  j["operators"] = {{"f1", op_json(spec.f1)},
                    {"f2", op_json(spec.f2)},
                    {"g1", op_json(spec.g1.inner())},
                    {"g2", op_json(spec.g2.inner())}};
  if (spec.known_solution) j["known_solution"] = vec_json(*spec.known_solution);
  if (spec.default_params) j["params"] = to_json(*spec.default_params);
  return j;
}

std::string serialize_problem(const ProblemSpec& spec) {
  return to_json(spec).dump(2) + "\n";
}

void save_problem(const std::string& path, const ProblemSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_problem(spec);
}

Json to_json(const StepCertificate& cert) {
  Json j;
  j["verdict"] = cert.certified() ? "Certified" : "Rejected";
  j["theta1"] = cert.theta1;
  j["theta2"] = cert.theta2;
  j["k1"] = cert.k1;
  // JSON has no infinity.
  j["theta"] = std::isfinite(cert.theta) ? Json(cert.theta) : Json(nullptr);
  if (cert.rho1_interval) {
    j["rho1_interval"] = {cert.rho1_interval->lo, cert.rho1_interval->hi};
  }
  if (cert.gamma_interval) {
    j["gamma_interval"] = {cert.gamma_interval->lo, cert.gamma_interval->hi};
  }
  j["reasons"] = cert.reasons;
  return j;
}

Json to_json(const ConstantsBundle& c) {
  return {{"alpha1", c.alpha1}, {"alpha2", c.alpha2}, {"beta1", c.beta1},
          {"beta2", c.beta2},   {"delta1", c.delta1}, {"delta2", c.delta2},
          {"sigma1", c.sigma1}, {"sigma2", c.sigma2}, {"nu1", c.nu1},
          {"nu2", c.nu2},       {"normA", c.norm_a}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const IterateTrace& trace,
                     bool dump_coords) {
  os << "# params: " << to_json(trace.params).dump() << '\n';
  if (trace.theta) os << "# theta: " << format_double(*trace.theta) << '\n';
  os << "iter,residual,error,bound_factor";

  Eigen::Index nx = 0, nz = 0;
  if (dump_coords) {
    for (const auto& r : trace.records) {
      nx = std::max(nx, r.x.size());
      nz = std::max(nz, r.z.size());
    }
    for (Eigen::Index i = 0; i < nx; ++i) os << ",x_" << i;
    for (Eigen::Index i = 0; i < nx; ++i) os << ",y_" << i;
    for (Eigen::Index i = 0; i < nz; ++i) os << ",z_" << i;
  }
  os << '\n';

  auto coords = [&](const Vector& v, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ',';
      if (i < v.size()) os << format_double(v(i));
    }
  };
  for (const auto& r : trace.records) {
    os << r.n << ',' << format_double(r.residual) << ',';
    if (r.error) os << format_double(*r.error);
    os << ',';
    if (r.bound_factor) os << format_double(*r.bound_factor);
    if (dump_coords) {
      coords(r.x, nx);
      coords(r.y, nx);
      coords(r.z, nz);
    }
    os << '\n';
  }
}

}  // namespace sgqvi
