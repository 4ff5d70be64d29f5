#pragma once

#include <cstddef>
#include <vector>

#include "mpsstab/linalg.hpp"

namespace mpsstab {

/// d complex D×D matrices A_0 … A_{d-1}. At least one must be nonzero.
class MpsTensor {
 public:
  explicit MpsTensor(std::vector<Matrix> matrices);

  int d() const { return static_cast<int>(matrices_.size()); }
  int D() const { return static_cast<int>(matrices_.front().rows()); }
  const Matrix& operator[](int i) const { return matrices_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

 private:
  std::vector<Matrix> matrices_;
};

/// Amplitudes over d^n basis states, site 1 most significant.
struct StateVector {
  int n = 0;
  int d = 0;
  Vector amplitudes;
};

/// Largest d^n that may be materialized densely; MPS_DENSE_CAP overrides the default.
std::size_t dense_cap();
inline constexpr std::size_t kDefaultDenseCap = 65536;

/// d^n, throwing ResourceLimit when it exceeds `cap`.
Eigen::Index checked_power(int d, int n, std::size_t cap);

/// All length-n products A_{i_1}⋯A_{i_n}, in big-endian string order.
std::vector<Matrix> string_products(const MpsTensor& a, int n);

/// Tr(X A_{i_1} ⋯ A_{i_n}) for all strings.
StateVector mps_state(const MpsTensor& a, const Matrix& boundary, int n);

/// Tr(X A^{(1)}_{i_1} ⋯ A^{(n)}_{i_n}) with a different tensor on each site.
/// Bond dimensions must chain; X closes the loop.
StateVector mps_state_sites(const Matrix& boundary, const std::vector<MpsTensor>& sites);

/// The unit matrix |mu⟩⟨nu| of size D.
Matrix unit_matrix(int D, int mu, int nu);

Subspace physical_subspace(const MpsTensor& a, int n, const Tolerance& tol = {});
/// Span of all length-j products, flattened column-major into C^{D²}.
Subspace virtual_subspace(const MpsTensor& a, int j, const Tolerance& tol = {});
/// Span{B C : B ∈ first, C ∈ second} for flattened D×D bases.
Subspace virtual_product(const Subspace& first, const Subspace& second, int D,
                         const Tolerance& tol = {});
Subspace periodic_subspace(const MpsTensor& a, int n, const Tolerance& tol = {});

/// τ|i_1 ⋯ i_n⟩ = |i_n i_1 ⋯ i_{n-1}⟩
StateVector translate(const StateVector& v);
Vector translate(const Vector& amplitudes, int d, int n, int times = 1);
Subspace translate(const Subspace& s, int d, int n, int times = 1);

MpsTensor conjugate(const MpsTensor& a, const Matrix& t, const Tolerance& tol = {});
MpsTensor direct_sum(const MpsTensor& a, const MpsTensor& b);
MpsTensor transpose_tensor(const MpsTensor& a);

/// Split of A against an invariant projector P (A_i P = P A_i P) into the
/// block-diagonal tensor P A P + P⊥ A P⊥ and the moving-wave remainder.
class BlockDecomposition {
 public:
  BlockDecomposition(MpsTensor tensor, Matrix projector, const Tolerance& tol = {});

  const MpsTensor& block_normal() const { return block_normal_; }
  const Matrix& projector() const { return projector_; }

  /// Σ_{ℓ=1}^{n} |(P⊥XP)[PAP]^{ℓ-1}[PAP⊥][P⊥AP⊥]^{n-ℓ}⟩
  StateVector wave_terms(const Matrix& boundary, int n) const;

 private:
  MpsTensor tensor_;
  Matrix projector_;
  MpsTensor block_normal_;
};

BlockDecomposition block_decompose(const MpsTensor& a, const Matrix& projector,
                                   const Tolerance& tol = {});

}  // namespace mpsstab
