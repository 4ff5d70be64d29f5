#include "mpsstab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpsstab {

namespace {

void require_finite(const Matrix& m, const char* op) {
  if (!m.allFinite()) throw NumericalFailure(std::string(op) + ": non-finite values (overflow?)");
}

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch(std::string(op) + ": ambient dimensions " +
                            std::to_string(a.ambient_dim()) + " and " +
                            std::to_string(b.ambient_dim()) + " differ");
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(rank_rel < 1.0)) {
    throw ContractViolation("rank tolerance must lie in (0, 1)");
  }
  if (!(eig_zero > 0.0)) {
    throw ContractViolation("zero-eigenvalue tolerance must be positive");
  }
}

Subspace::Subspace(Eigen::Index ambient_dim, Matrix basis, double tol)
    : ambient_(ambient_dim), basis_(std::move(basis)), tol_(tol) {
  if (ambient_dim <= 0) {
    throw DimensionMismatch("subspace ambient dimension must be positive");
  }
  if (basis_.cols() == 0) {
    basis_.resize(ambient_dim, 0);
  }
  if (basis_.rows() != ambient_dim) {
    throw DimensionMismatch("subspace basis rows do not match ambient dimension");
  }
  if (basis_.cols() > ambient_dim) {
    throw DimensionMismatch("subspace basis has more vectors than the ambient dimension");
  }
}

Subspace Subspace::zero(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Vector Subspace::reject(const Vector& v) const {
  if (v.size() != ambient_) {
    throw DimensionMismatch("vector length does not match subspace ambient dimension");
  }
  if (is_zero()) return v;
  return v - basis_ * (basis_.adjoint() * v);
}

Subspace orthonormal_basis(const Matrix& columns, const Tolerance& tol) {
  const Eigen::Index ambient = columns.rows();
  if (ambient == 0) {
    throw DimensionMismatch("orthonormal_basis: vectors have zero length");
  }
  if (columns.cols() == 0) return Subspace(ambient, Matrix(ambient, 0), tol.rank_rel);
  require_finite(columns, "orthonormal_basis");

  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(columns, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  if (!(smax > 0.0)) return Subspace(ambient, Matrix(ambient, 0), tol.rank_rel);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol.rank_rel * smax) ++rank;
  return Subspace(ambient, svd.matrixU().leftCols(rank), tol.rank_rel);
}

Subspace orthonormal_basis(const std::vector<Vector>& vectors, const Tolerance& tol) {
  if (vectors.empty()) {
    throw DimensionMismatch("orthonormal_basis: cannot infer ambient dimension of an empty list");
  }
  const Eigen::Index ambient = vectors.front().size();
  Matrix stacked(ambient, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != ambient) {
      throw DimensionMismatch("orthonormal_basis: vectors have different lengths");
    }
    stacked.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return orthonormal_basis(stacked, tol);
}

Subspace sum(const Subspace& s1, const Subspace& s2, const Tolerance& tol) {
  require_same_ambient(s1, s2, "sum");
  Matrix stacked(s1.ambient_dim(), s1.dim() + s2.dim());
  stacked << s1.basis(), s2.basis();
  return orthonormal_basis(stacked, tol);
}

Subspace intersect(const Subspace& s1, const Subspace& s2, const Tolerance& tol) {
  require_same_ambient(s1, s2, "intersect");
  const Eigen::Index n = s1.ambient_dim();
  if (s1.is_zero() || s2.is_zero()) return Subspace::zero(n);

  // P1⊥ + P2⊥ leaves S1 + S2 invariant, has eigenvalue 2 on its complement,
  // and its kernel lies inside S1 + S2. Diagonalizing the compression onto
  // S1 + S2 therefore yields the same near-zero eigenspace.
  const Subspace total = sum(s1, s2, tol);
  const Matrix& q = total.basis();
  const Matrix c1 = q.adjoint() * s1.basis();
  const Matrix c2 = q.adjoint() * s2.basis();
  Matrix op = 2.0 * Matrix::Identity(q.cols(), q.cols()) - c1 * c1.adjoint() - c2 * c2.adjoint();
  op = 0.5 * (op + op.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(op);
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("intersect: eigensolver did not converge");
  }
  Eigen::Index count = 0;
  while (count < eig.eigenvalues().size() && eig.eigenvalues()(count) < tol.eig_zero) ++count;
  if (count == 0) return Subspace::zero(n);
  return Subspace(n, q * eig.eigenvectors().leftCols(count), tol.rank_rel);
}

Subspace tensor_product(const Subspace& s, const Subspace& t) {
  const Eigen::Index ambient = s.ambient_dim() * t.ambient_dim();
  Matrix basis(ambient, s.dim() * t.dim());
  Eigen::Index col = 0;
  for (Eigen::Index a = 0; a < s.dim(); ++a) {
    for (Eigen::Index b = 0; b < t.dim(); ++b) {
      basis.col(col++) = kron(Vector(s.basis().col(a)), Vector(t.basis().col(b)));
    }
  }
  return Subspace(ambient, std::move(basis), std::max(s.tol(), t.tol()));
}

double containment_residual(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t, "contains");
  if (t.is_zero()) return 0.0;
  if (s.is_zero()) return 1.0;
  const Matrix rejected = t.basis() - s.basis() * (s.basis().adjoint() * t.basis());
  return rejected.colwise().norm().maxCoeff();
}

bool contains(const Subspace& s, const Subspace& t, const Tolerance& tol) {
  return containment_residual(s, t) <= tol.eig_zero;
}

bool same_subspace(const Subspace& s, const Subspace& t, const Tolerance& tol) {
  return s.dim() == t.dim() && contains(s, t, tol) && contains(t, s, tol);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

Subspace kernel(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("kernel: operator must be square and nonempty");
  }
  require_finite(m, "kernel");
  if (!is_hermitian(m, 10.0 * tol.eig_zero)) {
    throw ContractViolation("kernel: operator is not Hermitian");
  }
  const Eigen::Index n = m.rows();
  if (max_abs(m) == 0.0) return Subspace::full(n);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()));
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("kernel: eigensolver did not converge");
  }
  const auto& lambda = eig.eigenvalues();
  const double top = std::max(lambda.cwiseAbs().maxCoeff(), 0.0);
  Eigen::Index count = 0;
  while (count < n && lambda(count) <= tol.eig_zero * top) ++count;
  return Subspace(n, eig.eigenvectors().leftCols(count), tol.rank_rel);
}

LowestEigenspace lowest_eigenspace(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("lowest_eigenspace: operator must be square and nonempty");
  }
  require_finite(m, "lowest_eigenspace");
  if (!is_hermitian(m, 10.0 * tol.eig_zero)) {
    throw ContractViolation("lowest_eigenspace: operator is not Hermitian");
  }
  const Eigen::Index n = m.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()));
  if (eig.info() != Eigen::Success) {
    throw NumericalFailure("lowest_eigenspace: eigensolver did not converge");
  }
  const auto& lambda = eig.eigenvalues();
  const double e0 = lambda(0);
  const double norm = lambda.cwiseAbs().maxCoeff();
  const double window = tol.eig_zero * std::max(1.0, norm);
  Eigen::Index count = 0;
  while (count < n && lambda(count) <= e0 + window) ++count;
  const double top = std::max(lambda.cwiseAbs().maxCoeff(), 0.0);
  Eigen::Index zeros = 0;
  if (max_abs(m) == 0.0) {
    zeros = n;
  } else {
    while (zeros < n && lambda(zeros) <= tol.eig_zero * top) ++zeros;
  }
  return {e0, norm, Subspace(n, eig.eigenvectors().leftCols(count), tol.rank_rel),
          Subspace(n, eig.eigenvectors().leftCols(zeros), tol.rank_rel)};
}

Matrix least_squares_min_norm(const Matrix& a, const Matrix& b, double rank_rel) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("least_squares_min_norm: row counts differ");
  }
  if (a.cols() == 0) return Matrix(0, b.cols());
  require_finite(a, "least_squares_min_norm");
  require_finite(b, "least_squares_min_norm");
  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  Matrix x = Matrix::Zero(a.cols(), b.cols());
  if (!(smax > 0.0)) return x;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > rank_rel * smax) ++rank;
  const Matrix ub = svd.matrixU().leftCols(rank).adjoint() * b;
  const Eigen::VectorXd inv = sigma.head(rank).cwiseInverse();
  x = svd.matrixV().leftCols(rank) * (inv.asDiagonal() * ub);
  return x;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) {
    throw DimensionMismatch("unvec: length is not a multiple of the row count");
  }
  return Eigen::Map<const Matrix>(v.data(), rows, v.size() / rows);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace mpsstab
