#pragma once

#include <cstddef>

#include "mpsstab/mps.hpp"

namespace mpsstab {

enum class Boundary { Open, Periodic };

const char* to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Sum of translated copies of the projector onto S_ℓ(A)⊥ on n sites.
struct ParentHamiltonian {
  MpsTensor tensor;
  int ell = 0;
  int n = 0;
  Boundary boundary = Boundary::Open;
  int terms = 0;
  Matrix op;
};

struct GroundSpaceResult {
  double energy = 0.0;
  Subspace space;
  bool frustration_free = false;
  int degeneracy = 0;
};

struct GroundComparison {
  bool equal = false;
  int gs_dim = 0;
  int mps_dim = 0;
  double max_residual = 0.0;
  GroundSpaceResult ground;
};

/// Largest d^n for which a Hamiltonian is assembled densely.
/// MPS_HAMILTONIAN_CAP overrides the default; the result never exceeds dense_cap().
std::size_t hamiltonian_cap();
inline constexpr std::size_t kDefaultHamiltonianCap = 4096;

/// h = I - P_{S_ℓ(A)}. Throws NotProperSubspace when S_ℓ(A) is the whole space.
Matrix local_term(const MpsTensor& a, int ell, const Tolerance& tol = {});

/// Σ over window starts (0..n-ℓ for OBC, 0..n-1 for PBC) of h on sites s..s+ℓ-1 (mod n).
Matrix assemble_local_sum(const Matrix& h, int d, int ell, int n, Boundary boundary);

ParentHamiltonian build(const MpsTensor& a, int ell, int n, Boundary boundary,
                        const Tolerance& tol = {});

GroundSpaceResult ground_space(const ParentHamiltonian& h, const Tolerance& tol = {});

/// Ground space against S_n(A) (OBC) or S_n^P(A) (PBC).
GroundComparison verify_ground_equals_mps(const MpsTensor& a, int ell, int n, Boundary boundary,
                                          const Tolerance& tol = {});

}  // namespace mpsstab
