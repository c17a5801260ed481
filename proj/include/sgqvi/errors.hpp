#pragma once

#include <stdexcept>
#include <string>

namespace sgqvi {

/// Operand dimensions do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map that must be inverted has a singular linear part.
class SingularOperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inner iteration ran out of steps before reaching its tolerance.
class NoConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A contraction radicand went negative: the constants cannot all be valid.
class InfeasibleConstantsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested generator constant ranges admit no certified instance.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem file. `where()` is a JSON pointer or "line L, column C".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace sgqvi
