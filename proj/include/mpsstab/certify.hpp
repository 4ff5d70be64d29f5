#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpsstab/mps.hpp"

namespace mpsstab {

enum class Side { Left, Right };

const char* to_string(Side side);
Side side_from_string(const std::string& s);

/// Candidate matrices Y_i for j-stability on one side, with the residuals of
/// the two defining conditions. `valid` iff both residuals are ≤ eig_zero.
///
/// Left:  Y_i V_{j+1} ⊆ V_j and Z = Σ_i A_i Y_i fixes V_{j+1} from the left.
/// Right: V_{j+1} Y_i ⊆ V_j and Z = Σ_i Y_i A_i fixes V_{j+1} from the right.
struct StabilityWitness {
  Side side = Side::Left;
  int j = 1;
  std::vector<Matrix> Y;
  double residual_invariance = 0.0;
  double residual_identity = 0.0;
  bool valid = false;
};

struct WitnessCheck {
  bool valid = false;
  double residual_invariance = 0.0;
  double residual_identity = 0.0;
};

/// Outcome of a least-squares witness search. `best` always holds the
/// minimal-norm solution; `found` iff it meets the tolerance. A miss is not
/// a proof of instability.
struct StabilitySearch {
  bool found = false;
  StabilityWitness best;

  double residual() const { return std::max(best.residual_invariance, best.residual_identity); }
};

struct StabilityLength {
  int j = 0;
  StabilityWitness witness;
  bool persistence_checked = false;
  bool persists = false;
};

/// Physical operator on j+1 sites that fixes [A]^{j+1} and moves a virtual
/// insertion to the boundary on the witness side.
struct PushingOperator {
  Side side = Side::Left;
  int j = 1;
  Matrix O;
  double fixed_point_residual = 0.0;
};

struct IntersectionResult {
  bool holds = false;
  int lhs_dim = 0;
  int rhs_dim = 0;
  Subspace lhs;
  Subspace rhs;
};

struct GeneralizedIntersectionResult {
  bool holds_at_k = false;
  bool b_intersects_above = false;
  int k = 0;
  int kmax = 0;  // the "for all larger lengths" clause was checked through kmax only
};

std::optional<int> injectivity_length(const MpsTensor& a, int jmax, const Tolerance& tol = {});
bool is_nilpotent(const MpsTensor& a, const Tolerance& tol = {});

StabilitySearch stability_witness(const MpsTensor& a, int j, Side side, const Tolerance& tol = {});
/// First j in 1..jmax with a witness. When j+1 ≤ jmax the same Y are rechecked at j+1.
std::optional<StabilityLength> stability_length(const MpsTensor& a, Side side, int jmax,
                                                const Tolerance& tol = {});
WitnessCheck check_witness(const MpsTensor& a, const StabilityWitness& w, const Tolerance& tol = {});

PushingOperator pushing_operator(const MpsTensor& a, const StabilityWitness& w,
                                 const Tolerance& tol = {});
/// N = Σ_i A_i M Y_i (left) or Σ_i Y_i M A_i (right).
Matrix pushed_boundary(const MpsTensor& a, const StabilityWitness& w, const Matrix& m);
/// max_s ‖Σ_t O_{st} A_t − A_s‖_F, normalized by max(1, max_s ‖A_s‖_F).
double fixed_point_residual(const MpsTensor& a, const PushingOperator& op);
/// Same normalization, for O·(A M [A]^j) = N [A]^{j+1} (left) or
/// O·([A]^j M A) = [A]^{j+1} N (right).
double transfer_residual(const MpsTensor& a, const PushingOperator& op, const StabilityWitness& w,
                         const Matrix& m);

IntersectionResult intersection_check(const MpsTensor& a, int k, const Tolerance& tol = {});
GeneralizedIntersectionResult generalized_intersection_check(const MpsTensor& a,
                                                             const MpsTensor& b, int k, int kmax,
                                                             const Tolerance& tol = {});

}  // namespace mpsstab
