#include "sgqvi/hilbert.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sgqvi/errors.hpp"

namespace sgqvi {

void require_same_dim(Eigen::Index a, Eigen::Index b, std::string_view what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

double inner(const Vector& u, const Vector& v) {
  require_same_dim(u.size(), v.size(), "inner");
  return u.dot(v);
}

double norm(const Vector& u) { return u.norm(); }

double max_symmetric_eigenvalue(const Matrix& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double min_symmetric_eigenvalue(const Matrix& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

LinearMap::LinearMap(Matrix matrix) : matrix_(std::move(matrix)) {
  require_finite(matrix_, "LinearMap");
}

LinearMap LinearMap::identity(Eigen::Index n) {
  return LinearMap(Matrix::Identity(n, n));
}

Vector LinearMap::apply(const Vector& u) const {
  require_same_dim(u.size(), source_dim(), "LinearMap::apply");
  return matrix_ * u;
}

Vector LinearMap::adjoint_apply(const Vector& v) const {
  require_same_dim(v.size(), target_dim(), "LinearMap::adjoint_apply");
  return matrix_.transpose() * v;
}

bool LinearMap::is_identity() const {
  return matrix_.rows() == matrix_.cols() &&
         matrix_ == Matrix::Identity(matrix_.rows(), matrix_.cols());
}

double LinearMap::operator_norm() const { return spectral_norm(matrix_); }

bool operator==(const LinearMap& a, const LinearMap& b) {
  return a.matrix_.rows() == b.matrix_.rows() &&
         a.matrix_.cols() == b.matrix_.cols() && a.matrix_ == b.matrix_;
}

PowerIterationResult power_iteration_norm(const Matrix& a, double tol,
                                          int max_iters, std::uint64_t seed) {
  PowerIterationResult out;
  if (a.size() == 0 || a.isZero(0.0)) {
    out.converged = true;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = unif(rng);
  v.normalize();

  double lambda = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = a.transpose() * (a * v);
    const double next = v.dot(w);
    const double wn = w.norm();
    out.iterations = it;
    if (wn == 0.0) {
      // Start vector in the kernel; restart along a coordinate axis.
      v.setZero();
      v((it - 1) % v.size()) = 1.0;
      continue;
    }
    v = w / wn;
    if (std::abs(next - lambda) <= tol * std::abs(next)) {
      lambda = next;
      out.converged = true;
      break;
    }
    lambda = next;
  }
  out.norm = std::sqrt(std::max(lambda, 0.0));
  return out;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0 || a.isZero(0.0)) return 0.0;
  const bool small = std::min(a.rows(), a.cols()) <= kDenseEigenLimit;
  if (!small) {
    const auto pi = power_iteration_norm(a);
    if (pi.converged) return pi.norm;
  }
  // Gram matrix on the smaller side.
  const Matrix gram = a.rows() < a.cols() ? Matrix(a * a.transpose())
                                          : Matrix(a.transpose() * a);
  return std::sqrt(std::max(max_symmetric_eigenvalue(gram), 0.0));
}

}  // namespace sgqvi
