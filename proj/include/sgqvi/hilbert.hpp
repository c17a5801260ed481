#pragma once

// Finite-dimensional realizations of the two Hilbert spaces and the bounded
// linear operator coupling them.

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>

namespace sgqvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Throws DimensionError unless `a == b`.
void require_same_dim(Eigen::Index a, Eigen::Index b, std::string_view what);

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const Vector& v, std::string_view what);
void require_finite(const Matrix& m, std::string_view what);

double inner(const Vector& u, const Vector& v);
double norm(const Vector& u);

/// Largest eigenvalue of a symmetric matrix (only the lower triangle is read).
double max_symmetric_eigenvalue(const Matrix& sym);
/// Smallest eigenvalue of a symmetric matrix.
double min_symmetric_eigenvalue(const Matrix& sym);

/// Dense map from R^source_dim() to R^target_dim(). Immutable.
class LinearMap {
 public:
  explicit LinearMap(Matrix matrix);
  static LinearMap identity(Eigen::Index n);

  Eigen::Index source_dim() const { return matrix_.cols(); }
  Eigen::Index target_dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& u) const;
  Vector adjoint_apply(const Vector& v) const;
  LinearMap adjoint() const { return LinearMap(matrix_.transpose()); }

  bool is_identity() const;

  /// Largest singular value. Returns 0 for the zero map.
  double operator_norm() const;

  friend bool operator==(const LinearMap& a, const LinearMap& b);

 private:
  Matrix matrix_;
};

struct PowerIterationResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on AᵀA from a fixed-seed start vector.
PowerIterationResult power_iteration_norm(const Matrix& a, double tol = 1e-12,
                                          int max_iters = 10'000,
                                          std::uint64_t seed = 0x5eed);

/// Spectral norm. Dimensions up to kDenseEigenLimit use a symmetric
/// eigensolve; larger ones use power iteration and fall back to the
/// eigensolve when it stalls.
double spectral_norm(const Matrix& a);

inline constexpr Eigen::Index kDenseEigenLimit = 64;

}  // namespace sgqvi
