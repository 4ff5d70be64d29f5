#pragma once

#include <utility>
#include <vector>

#include "mpsstab/types.hpp"

namespace mpsstab {

/// Thresholds for rank and zero-eigenvalue decisions.
///
/// `rank_rel` is a relative singular-value cutoff (against the largest
/// singular value). `eig_zero` is an absolute threshold applied after the
/// operator or vector in question has been normalized.
struct Tolerance {
  double rank_rel = 1e-10;
  double eig_zero = 1e-9;

  void validate() const;
};

/// A linear subspace of C^ambient_dim held as an orthonormal column basis.
///
/// The zero subspace always has a basis with zero columns.
class Subspace {
 public:
  Subspace() = default;
  /// Wraps `basis` without re-orthonormalizing. Columns must already be orthonormal.
  Subspace(Eigen::Index ambient_dim, Matrix basis, double tol = Tolerance{}.rank_rel);

  static Subspace zero(Eigen::Index ambient_dim);
  static Subspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  const Matrix& basis() const { return basis_; }
  double tol() const { return tol_; }

  Vector vector(Eigen::Index k) const { return basis_.col(k); }
  Matrix projector() const;
  /// (I - P) v
  Vector reject(const Vector& v) const;

 private:
  Eigen::Index ambient_ = 0;
  Matrix basis_;
  double tol_ = Tolerance{}.rank_rel;
};

Subspace orthonormal_basis(const Matrix& columns, const Tolerance& tol = {});
Subspace orthonormal_basis(const std::vector<Vector>& vectors, const Tolerance& tol = {});

/// S1 ∩ S2 as the near-kernel of P1⊥ + P2⊥.
Subspace intersect(const Subspace& s1, const Subspace& s2, const Tolerance& tol = {});
Subspace sum(const Subspace& s1, const Subspace& s2, const Tolerance& tol = {});
/// Span of all s ⊗ t, with s as the more significant factor.
Subspace tensor_product(const Subspace& s, const Subspace& t);

/// max over basis vectors t of T of ‖(I - P_S) t‖; zero when T is {0}.
double containment_residual(const Subspace& s, const Subspace& t);
bool contains(const Subspace& s, const Subspace& t, const Tolerance& tol = {});
/// Mutual containment.
bool same_subspace(const Subspace& s, const Subspace& t, const Tolerance& tol = {});

bool is_hermitian(const Matrix& m, double tol);

/// Eigenspace of a Hermitian PSD operator for eigenvalues ≤ eig_zero · λ_max.
/// The zero operator has the whole space as kernel.
Subspace kernel(const Matrix& m, const Tolerance& tol = {});

struct LowestEigenspace {
  double energy = 0.0;
  double norm = 0.0;  // spectral norm of M
  Subspace space;
  /// Eigenvectors with eigenvalue ≤ eig_zero · λ_max, as kernel() would return.
  Subspace kernel;
};

/// Smallest eigenvalue and the span of eigenvectors within
/// eig_zero · max(1, ‖M‖) of it.
LowestEigenspace lowest_eigenspace(const Matrix& m, const Tolerance& tol = {});

/// Minimal-norm least-squares solution of `a x = b` (b may have several columns).
/// Singular values below rank_rel · σ_max are dropped.
Matrix least_squares_min_norm(const Matrix& a, const Matrix& b, double rank_rel = 1e-12);

/// Column-major flattening of a square matrix and its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

}  // namespace mpsstab
