#include "doctest.h"
#include "sgqvi/errors.hpp"
#include "sgqvi/hilbert.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace sgqvi;
using sgqvi::testing::Rng;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Plain power iteration on AᵀA written without any library helper; used as
// the reference for spectral_norm.
double reference_norm(const Matrix& a) {
  Vector v = Vector::Ones(a.cols()) / std::sqrt(double(a.cols()));
  v(0) += 0.1;  // avoid starting orthogonal to the top singular vector
  double lambda = 0.0;
  for (int it = 0; it < 200000; ++it) {
    Vector w = Vector::Zero(a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double row = 0.0;
      for (Eigen::Index j = 0; j < a.cols(); ++j) row += a(i, j) * v(j);
      for (Eigen::Index j = 0; j < a.cols(); ++j) w(j) += a(i, j) * row;
    }
    const double next = w.norm();
    v = w / next;
    if (std::abs(next - lambda) <= 1e-15 * next) break;
    lambda = next;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_CASE("inner product examples") {
  CHECK(inner(vec({1, 0}), vec({0, 1})) == 0.0);
  CHECK(inner(vec({3, 4}), vec({3, 4})) == 25.0);
  CHECK(inner(vec({1, 2, 3}), vec({4, 5, 6})) == 32.0);
  CHECK(norm(vec({3, 4})) == doctest::Approx(5.0));
  CHECK_THROWS_AS(inner(vec({1, 2}), vec({1, 2, 3})), DimensionError);
}

TEST_CASE("apply and adjoint_apply") {
  Rng rng(3);
  const Vector u = rng.vector(3);
  CHECK(LinearMap::identity(3).apply(u) == u);

  Matrix d(2, 2);
  d << 2, 0, 0, 3;
  CHECK(LinearMap(d).apply(vec({1, 1})) == vec({2, 3}));

  Matrix n(2, 2);
  n << 0, 1, 0, 0;
  const LinearMap a(n);
  // Row-major [[0,1],[0,0]] sends e2 to e1, so its transpose sends e1 to e2.
  CHECK(a.adjoint_apply(vec({1, 0})) == vec({0, 1}));
  CHECK(a.adjoint_apply(vec({0, 1})) == vec({0, 0}));
  // The same literal read column-major.
  const LinearMap b(Matrix(n.transpose()));
  CHECK(b.adjoint_apply(vec({1, 0})) == vec({0, 0}));
  CHECK(b.adjoint_apply(vec({0, 1})) == vec({1, 0}));
  CHECK(a.adjoint().matrix() == n.transpose());

  CHECK_THROWS_AS(a.apply(vec({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(a.adjoint_apply(vec({1})), DimensionError);
}

TEST_CASE("LinearMap rejects non-finite entries") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::nan("");
  CHECK_THROWS_AS(LinearMap{m}, std::invalid_argument);
}

TEST_CASE("operator_norm examples") {
  CHECK(LinearMap::identity(3).operator_norm() == doctest::Approx(1.0).epsilon(1e-12));
  Matrix d(2, 2);
  d << 3, 0, 0, 1;
  CHECK(LinearMap(d).operator_norm() == doctest::Approx(3.0).epsilon(1e-12));

  // AᵀA = [[1,1],[1,2]] has top eigenvalue (3 + sqrt 5)/2, whose square root
  // is the golden ratio.
  Matrix s(2, 2);
  s << 1, 1, 0, 1;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(LinearMap(s).operator_norm() - golden) <= 1e-10 * golden);

  CHECK(LinearMap(Matrix::Zero(2, 3)).operator_norm() == 0.0);
}

TEST_CASE("operator_norm equals adjoint norm and matches power iteration") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = rng.integer(1, 20), c = rng.integer(1, 20);
    const LinearMap a(rng.matrix(r, c));
    const double nrm = a.operator_norm();
    CHECK(std::abs(nrm - a.adjoint().operator_norm()) <= 1e-12 * nrm);
    CHECK(std::abs(nrm - reference_norm(a.matrix())) <= 1e-8 * nrm);
  }
}

TEST_CASE("power iteration and large-dimension path") {
  Rng rng(5);
  const Matrix big = rng.matrix(80, 70);
  const auto pi = power_iteration_norm(big);
  CHECK(pi.converged);
  const double ref = reference_norm(big);
  CHECK(std::abs(spectral_norm(big) - ref) <= 1e-8 * ref);

  // Deterministic for fixed input.
  CHECK(power_iteration_norm(big).norm == pi.norm);
  CHECK(spectral_norm(big) == spectral_norm(big));
}

TEST_CASE("adjoint identity and norm consistency on random samples") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = rng.integer(1, 10), c = rng.integer(1, 10);
    const LinearMap a(rng.matrix(r, c, 3.0));
    const Vector u = rng.vector(c, 5.0);
    const Vector v = rng.vector(r, 5.0);
    const double na = a.operator_norm();
    const double gap = inner(a.apply(u), v) - inner(u, a.adjoint_apply(v));
    CHECK(std::abs(gap) <= 1e-10 * (1.0 + u.norm() * v.norm() * na));
    CHECK(a.apply(u).norm() <= na * u.norm() * (1.0 + 1e-12) + 1e-14);
  }
}
