#include "mpsstab/hamiltonian.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace mpsstab {

const char* to_string(Boundary b) { return b == Boundary::Open ? "obc" : "pbc"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "obc" || s == "OBC" || s == "open") return Boundary::Open;
  if (s == "pbc" || s == "PBC" || s == "periodic") return Boundary::Periodic;
  throw ContractViolation("unknown boundary '" + s + "' (expected obc or pbc)");
}

std::size_t hamiltonian_cap() {
  std::size_t cap = kDefaultHamiltonianCap;
  if (const char* env = std::getenv("MPS_HAMILTONIAN_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) cap = static_cast<std::size_t>(value);
  }
  return std::min(cap, dense_cap());
}

Matrix local_term(const MpsTensor& a, int ell, const Tolerance& tol) {
  if (ell < 1) throw ContractViolation("interaction length must be at least 1");
  const Subspace s = physical_subspace(a, ell, tol);
  if (s.dim() == s.ambient_dim()) {
    throw NotProperSubspace("S_" + std::to_string(ell) +
                            "(A) is the full space; no parent Hamiltonian at this length");
  }
  return Matrix::Identity(s.ambient_dim(), s.ambient_dim()) - s.projector();
}

Matrix assemble_local_sum(const Matrix& h, int d, int ell, int n, Boundary boundary) {
  if (ell > n) throw ContractViolation("interaction length exceeds system size");
  const Eigen::Index local = checked_power(d, ell, dense_cap());
  if (h.rows() != local || h.cols() != local) {
    throw DimensionMismatch("local term is not d^ell × d^ell");
  }
  const Eigen::Index total = checked_power(d, n, hamiltonian_cap());

  // place[k] = d^(n-1-k): weight of site k in the big-endian index.
  std::vector<Eigen::Index> place(static_cast<std::size_t>(n));
  for (int k = n - 1, w = 1; k >= 0; --k, w *= d) place[static_cast<std::size_t>(k)] = w;

  const int starts = boundary == Boundary::Open ? n - ell + 1 : n;
  Matrix op = Matrix::Zero(total, total);
  std::vector<int> sites(static_cast<std::size_t>(ell));
  for (int s = 0; s < starts; ++s) {
    for (int k = 0; k < ell; ++k) sites[static_cast<std::size_t>(k)] = (s + k) % n;
    for (Eigen::Index x = 0; x < total; ++x) {
      Eigen::Index loc = 0;
      Eigen::Index rest = x;
      for (int site : sites) {
        const Eigen::Index digit = (x / place[static_cast<std::size_t>(site)]) % d;
        loc = loc * d + digit;
        rest -= digit * place[static_cast<std::size_t>(site)];
      }
      for (Eigen::Index out = 0; out < local; ++out) {
        const Scalar value = h(out, loc);
        if (value == Scalar(0.0)) continue;
        Eigen::Index y = rest;
        Eigen::Index digits = out;
        for (int k = ell - 1; k >= 0; --k) {
          y += (digits % d) * place[static_cast<std::size_t>(sites[static_cast<std::size_t>(k)])];
          digits /= d;
        }
        op(y, x) += value;
      }
    }
  }
  return op;
}

ParentHamiltonian build(const MpsTensor& a, int ell, int n, Boundary boundary,
                        const Tolerance& tol) {
  if (ell < 1 || n < 1) throw ContractViolation("ell and n must be positive");
  if (ell > n) throw ContractViolation("interaction length exceeds system size");
  checked_power(a.d(), n, hamiltonian_cap());
  const Matrix h = local_term(a, ell, tol);
  ParentHamiltonian out{a, ell, n, boundary, boundary == Boundary::Open ? n - ell + 1 : n,
                        assemble_local_sum(h, a.d(), ell, n, boundary)};
  return out;
}

GroundSpaceResult ground_space(const ParentHamiltonian& h, const Tolerance& tol) {
  const LowestEigenspace low = lowest_eigenspace(h.op, tol);
  const double norm = low.norm;
  const double window = tol.eig_zero * std::max(1.0, norm);
  GroundSpaceResult out;
  out.energy = low.energy;
  out.frustration_free = low.energy <= window;
  out.space = out.frustration_free && norm > 0.0 ? low.kernel : low.space;
  out.degeneracy = static_cast<int>(out.space.dim());
  if (out.degeneracy < 1) {
    throw NumericalFailure("ground space came out empty");
  }
  return out;
}

GroundComparison verify_ground_equals_mps(const MpsTensor& a, int ell, int n, Boundary boundary,
                                          const Tolerance& tol) {
  const ParentHamiltonian h = build(a, ell, n, boundary, tol);
  GroundComparison out;
  out.ground = ground_space(h, tol);
  const Subspace mps =
      boundary == Boundary::Open ? physical_subspace(a, n, tol) : periodic_subspace(a, n, tol);
  out.gs_dim = out.ground.degeneracy;
  out.mps_dim = static_cast<int>(mps.dim());
  out.max_residual = std::max(containment_residual(out.ground.space, mps),
                              containment_residual(mps, out.ground.space));
  out.equal = out.gs_dim == out.mps_dim && out.max_residual <= tol.eig_zero;
  return out;
}

}  // namespace mpsstab
