#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mpsstab/certify.hpp"
#include "mpsstab/hamiltonian.hpp"

namespace mpsstab {

namespace tensors {

/// A_0 = 1, A_1 = |0⟩⟨1|
MpsTensor w_state();
/// A_i = a_i 1 + b_i |0⟩⟨1| for nonzero, linearly independent a, b.
MpsTensor w_general(const Vector& a, const Vector& b);
/// A_0 = 1_D, A_1 = Σ_i |i⟩⟨i+1|, D ≥ 2.
MpsTensor dicke(int D);
/// A_0 = e^{-ip}|0⟩⟨0| + |1⟩⟨1|, A_1 = |0⟩⟨1|
MpsTensor w_momentum(double p);
MpsTensor domain_wall();
/// A_i = a_i |0⟩(⟨0|+⟨1|) + b_i |1⟩⟨1|
MpsTensor domain_wall_general(const Vector& a, const Vector& b);
/// A_0 = |1⟩⟨0|, A_1 = |0⟩⟨1|
MpsTensor afm_ising();
MpsTensor ghz();
/// Spin-1 valence-bond tensor, injective at length 2.
MpsTensor aklt();
/// [[A_i, B_i], [0, A_i]]
MpsTensor gen_w(const MpsTensor& a, const MpsTensor& b);
/// [[A_i, A_i], [0, B_i]]
MpsTensor gen_dw(const MpsTensor& a, const MpsTensor& b);
/// [[A_i, B_i], [0, C_i]] where B_i is D_A × D_C.
MpsTensor block_triangular(const MpsTensor& a, const std::vector<Matrix>& b, const MpsTensor& c);
/// A_0 = [[1,1],[0,0]], A_1 = [[0,1],[0,0]]
MpsTensor counterexample_a();
/// A ⊕ Aᵀ for the tensor above.
MpsTensor counterexample_c();
/// The 4×4 tensor whose physical subspaces are the intersections generated by C.
MpsTensor counterexample_d();
/// Copy of `a` on a larger physical space, with A_i = 0 for i ≥ a.d().
MpsTensor embed_physical(const MpsTensor& a, int d);
/// Tensor with only the matrix at physical index `index` nonzero.
MpsTensor single_index(const Matrix& m, int index, int d);

}  // namespace tensors

namespace expect {

struct Injectivity {
  int jmax = 6;
  std::optional<int> length;
};
/// The solver's first witness appears exactly at j.
struct StabilityLength {
  Side side = Side::Left;
  int j = 1;
};
/// The solver finds a witness at j (not necessarily the first).
struct StableAt {
  Side side = Side::Left;
  int j = 1;
};
struct SuppliedWitness {
  Side side = Side::Left;
  int j = 1;
  std::vector<Matrix> Y;
};
/// No witness at any j ≤ jmax and every search residual exceeds min_residual.
struct NoStability {
  Side side = Side::Left;
  int jmax = 5;
  double min_residual = 1e-3;
};
struct Intersection {
  int k = 2;
  bool holds = true;
  std::optional<int> lhs_dim;
  /// When set, the intersection must equal S_{k+1} of this tensor.
  std::optional<MpsTensor> lhs_equals;
};
struct GeneralizedIntersection {
  MpsTensor other;
  int k = 3;
  int kmax = 6;
};
struct SubspaceDim {
  bool periodic = false;
  int n = 1;
  int dim = 0;
};
struct LocalTerm {
  int ell = 2;
  Matrix h;
  double tol = 1e-12;
};
struct GroundSpace {
  Boundary boundary = Boundary::Open;
  int ell = 2;
  int n = 3;
  std::optional<int> degeneracy;
  std::optional<bool> frustration_free;
  /// Ground space must equal S_n (OBC) / S_n^P (PBC).
  bool equals_mps = false;
  /// Ground space must contain S_n (OBC) / S_n^P (PBC).
  bool contains_mps = false;
  /// Ground space must equal S_n of this tensor.
  std::optional<MpsTensor> equals_physical_of;
  /// For frustrated cases: E0 must exceed this.
  std::optional<double> min_energy;
};

using Check = std::variant<Injectivity, StabilityLength, StableAt, SuppliedWitness, NoStability,
                           Intersection, GeneralizedIntersection, SubspaceDim, LocalTerm,
                           GroundSpace>;

}  // namespace expect

/// One expected property and a plain-language statement of where it comes from.
struct Expectation {
  expect::Check check;
  std::string note;
};

struct GalleryEntry {
  std::string name;
  std::string description;
  MpsTensor tensor;
  std::vector<Expectation> expectations;
};

enum class Status { Pass, Fail, Skip };
const char* to_string(Status s);

struct CheckRecord {
  std::string entry;
  std::string check;
  Status status = Status::Pass;
  std::string detail;
  std::string note;
};

std::vector<std::string> builtin_names();
/// Default-parameter entry by name. Throws ContractViolation for unknown names.
GalleryEntry builtin(const std::string& name);
std::vector<GalleryEntry> builtin_entries();

/// Sites needed to evaluate a check (0 when it needs no physical space).
int sites_required(const expect::Check& check);
std::string describe(const expect::Check& check);
CheckRecord evaluate(const GalleryEntry& entry, const Expectation& e, int nmax,
                     const Tolerance& tol = {});

/// Evaluates every expectation up to nmax sites; never stops at the first failure.
/// Records are ordered by entry name, then by declaration order.
std::vector<CheckRecord> run_entries(const std::vector<GalleryEntry>& entries, int nmax,
                                     const Tolerance& tol = {});
std::vector<CheckRecord> run_all(int nmax, const Tolerance& tol = {});

struct GenDwReport {
  Status status = Status::Pass;
  std::string reason;
  int j_a = 0;
  int j_b = 0;
  std::vector<std::string> failures;
};

/// Builds [[A, A], [0, B]] and checks intersection for k = j_A+j_B+1..kmax and
/// S_n^P(C) = S_n^P(A) ⊕ S_n^P(B) for n = 2..nmax. Skipped when A is not
/// left-stable, B not right-stable, or S_1(A) ∩ S_1(B) ≠ {0}.
GenDwReport gen_dw_property_test(const MpsTensor& a, const MpsTensor& b, int kmax, int nmax,
                                 const Tolerance& tol = {});

}  // namespace mpsstab
