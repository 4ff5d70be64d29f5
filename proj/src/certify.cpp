#include "mpsstab/certify.hpp"

#include <algorithm>
#include <string>

namespace mpsstab {

namespace {

// Orthogonal projector onto the complement of V inside C^{D²}.
Matrix complement_projector(const Subspace& v) {
  const Eigen::Index n = v.ambient_dim();
  return Matrix::Identity(n, n) - v.projector();
}

struct StabilitySpaces {
  Subspace lower;  // V_j
  Subspace upper;  // V_{j+1}
};

StabilitySpaces stability_spaces(const MpsTensor& a, int j, const Tolerance& tol) {
  Subspace lower = virtual_subspace(a, j, tol);
  Subspace upper = virtual_product(lower, virtual_subspace(a, 1, tol), a.D(), tol);
  return {std::move(lower), std::move(upper)};
}

WitnessCheck residuals(const MpsTensor& a, const std::vector<Matrix>& y, Side side,
                       const StabilitySpaces& spaces, const Tolerance& tol) {
  const int D = a.D();
  const Matrix q = complement_projector(spaces.lower);
  Matrix z = Matrix::Zero(D, D);
  for (int i = 0; i < a.d(); ++i) {
    z += side == Side::Left ? Matrix(a[i] * y[static_cast<std::size_t>(i)])
                            : Matrix(y[static_cast<std::size_t>(i)] * a[i]);
  }
  WitnessCheck out;
  for (Eigen::Index m = 0; m < spaces.upper.dim(); ++m) {
    const Matrix b = unvec(spaces.upper.basis().col(m), D);
    for (const Matrix& yi : y) {
      const Matrix moved = side == Side::Left ? Matrix(yi * b) : Matrix(b * yi);
      out.residual_invariance = std::max(out.residual_invariance, (q * vec(moved)).norm());
    }
    const Matrix fixed = side == Side::Left ? Matrix(z * b) : Matrix(b * z);
    out.residual_identity = std::max(out.residual_identity, (fixed - b).norm());
  }
  out.valid = out.residual_invariance <= tol.eig_zero && out.residual_identity <= tol.eig_zero;
  return out;
}

void require_shapes(const MpsTensor& a, const StabilityWitness& w) {
  if (w.j < 1) throw ContractViolation("witness length must be at least 1");
  if (static_cast<int>(w.Y.size()) != a.d()) {
    throw DimensionMismatch("witness must hold one matrix per physical index");
  }
  for (const Matrix& y : w.Y) {
    if (y.rows() != a.D() || y.cols() != a.D()) {
      throw DimensionMismatch("witness matrices must be D×D");
    }
  }
}

double max_frobenius(const std::vector<Matrix>& ms) {
  double out = 0.0;
  for (const Matrix& m : ms) out = std::max(out, m.norm());
  return out;
}

}  // namespace

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

Side side_from_string(const std::string& s) {
  if (s == "left" || s == "l") return Side::Left;
  if (s == "right" || s == "r") return Side::Right;
  throw ContractViolation("unknown side '" + s + "' (expected left or right)");
}

std::optional<int> injectivity_length(const MpsTensor& a, int jmax, const Tolerance& tol) {
  if (jmax < 1) throw ContractViolation("jmax must be at least 1");
  const int D = a.D();
  const Subspace single = virtual_subspace(a, 1, tol);
  Subspace v = single;
  for (int j = 1; j <= jmax; ++j) {
    if (j > 1) v = virtual_product(v, single, D, tol);
    if (v.dim() == static_cast<Eigen::Index>(D) * D) return j;
    if (v.is_zero()) return std::nullopt;
  }
  return std::nullopt;
}

bool is_nilpotent(const MpsTensor& a, const Tolerance& tol) {
  return virtual_subspace(a, a.D(), tol).is_zero();
}

WitnessCheck check_witness(const MpsTensor& a, const StabilityWitness& w, const Tolerance& tol) {
  require_shapes(a, w);
  return residuals(a, w.Y, w.side, stability_spaces(a, w.j, tol), tol);
}

StabilitySearch stability_witness(const MpsTensor& a, int j, Side side, const Tolerance& tol) {
  if (j < 1) throw ContractViolation("stability length must be at least 1");
  const int d = a.d();
  const int D = a.D();
  const Eigen::Index D2 = static_cast<Eigen::Index>(D) * D;
  const StabilitySpaces spaces = stability_spaces(a, j, tol);
  const Matrix q = complement_projector(spaces.lower);
  const Eigen::Index basis_count = spaces.upper.dim();

  // Unknown (i, a, b) is entry (a, b) of Y_i at column i·D² + a + b·D.
  // Rows: for each B_m, d invariance blocks followed by one identity block.
  const Eigen::Index block_rows = static_cast<Eigen::Index>(d + 1) * D2;
  Matrix system = Matrix::Zero(basis_count * block_rows, d * D2);
  Vector rhs = Vector::Zero(basis_count * block_rows);
  for (Eigen::Index m = 0; m < basis_count; ++m) {
    const Matrix b = unvec(spaces.upper.basis().col(m), D);
    const Eigen::Index row0 = m * block_rows;
    rhs.segment(row0 + d * D2, D2) = vec(b);
    for (int i = 0; i < d; ++i) {
      for (int col = 0; col < D; ++col) {
        for (int row = 0; row < D; ++row) {
          const Matrix e = unit_matrix(D, row, col);
          const Eigen::Index unknown = i * D2 + row + col * D;
          const Matrix moved = side == Side::Left ? Matrix(e * b) : Matrix(b * e);
          system.block(row0 + i * D2, unknown, D2, 1) = q * vec(moved);
          const Matrix fixed = side == Side::Left ? Matrix(a[i] * e * b) : Matrix(b * e * a[i]);
          system.block(row0 + d * D2, unknown, D2, 1) = vec(fixed);
        }
      }
    }
  }

  StabilitySearch out;
  out.best.side = side;
  out.best.j = j;
  const Vector y = basis_count == 0 ? Vector::Zero(d * D2)
                                    : Vector(least_squares_min_norm(system, rhs, tol.rank_rel));
  for (int i = 0; i < d; ++i) out.best.Y.push_back(unvec(y.segment(i * D2, D2), D));
  const WitnessCheck check = residuals(a, out.best.Y, side, spaces, tol);
  out.best.residual_invariance = check.residual_invariance;
  out.best.residual_identity = check.residual_identity;
  out.best.valid = check.valid;
  out.found = check.valid;
  return out;
}

std::optional<StabilityLength> stability_length(const MpsTensor& a, Side side, int jmax,
                                                const Tolerance& tol) {
  if (jmax < 1) throw ContractViolation("jmax must be at least 1");
  for (int j = 1; j <= jmax; ++j) {
    StabilitySearch search = stability_witness(a, j, side, tol);
    if (!search.found) continue;
    StabilityLength out{j, std::move(search.best)};
    if (j + 1 <= jmax) {
      StabilityWitness next = out.witness;
      next.j = j + 1;
      out.persistence_checked = true;
      out.persists = check_witness(a, next, tol).valid;
    }
    return out;
  }
  return std::nullopt;
}

PushingOperator pushing_operator(const MpsTensor& a, const StabilityWitness& w,
                                 const Tolerance& tol) {
  require_shapes(a, w);
  if (!check_witness(a, w, tol).valid) {
    throw ContractViolation("pushing_operator: witness is not valid for this tensor");
  }
  const int d = a.d();
  const int D = a.D();
  const int j = w.j;
  const std::vector<Matrix> shorter = string_products(a, j);
  const std::vector<Matrix> longer = string_products(a, j + 1);
  const auto n_short = static_cast<Eigen::Index>(shorter.size());
  const auto n_long = static_cast<Eigen::Index>(longer.size());

  Matrix dictionary(static_cast<Eigen::Index>(D) * D, n_short);
  for (Eigen::Index s = 0; s < n_short; ++s) dictionary.col(s) = vec(shorter[static_cast<std::size_t>(s)]);

  // Column i·d^{j+1} + s: Y_i A_s (left) or A_s Y_i (right), to be expanded in the dictionary.
  Matrix targets(static_cast<Eigen::Index>(D) * D, d * n_long);
  for (int i = 0; i < d; ++i) {
    const Matrix& y = w.Y[static_cast<std::size_t>(i)];
    for (Eigen::Index s = 0; s < n_long; ++s) {
      const Matrix& as = longer[static_cast<std::size_t>(s)];
      targets.col(i * n_long + s) = vec(w.side == Side::Left ? Matrix(y * as) : Matrix(as * y));
    }
  }
  const Matrix coeffs = least_squares_min_norm(dictionary, targets, tol.rank_rel);
  const Matrix misfit = dictionary * coeffs - targets;
  for (Eigen::Index c = 0; c < targets.cols(); ++c) {
    if (misfit.col(c).norm() > 1e-9 * std::max(1.0, targets.col(c).norm())) {
      throw NumericalFailure(
          "pushing_operator: Y_i [A]^{j+1} is not in the span of length-j products");
    }
  }

  PushingOperator out{w.side, j, Matrix::Zero(n_long, n_long)};
  for (int i = 0; i < d; ++i) {
    for (Eigen::Index s = 0; s < n_long; ++s) {
      for (Eigen::Index sp = 0; sp < n_short; ++sp) {
        const Eigen::Index col = w.side == Side::Left ? i * n_short + sp : sp * d + i;
        out.O(s, col) = coeffs(sp, i * n_long + s);
      }
    }
  }
  out.fixed_point_residual = fixed_point_residual(a, out);
  if (out.fixed_point_residual > 1e-9) {
    throw NumericalFailure("pushing_operator: fixed-point identity fails (residual " +
                           std::to_string(out.fixed_point_residual) + ")");
  }
  return out;
}

Matrix pushed_boundary(const MpsTensor& a, const StabilityWitness& w, const Matrix& m) {
  Matrix n = Matrix::Zero(a.D(), a.D());
  for (int i = 0; i < a.d(); ++i) {
    const Matrix& y = w.Y[static_cast<std::size_t>(i)];
    n += w.side == Side::Left ? Matrix(a[i] * m * y) : Matrix(y * m * a[i]);
  }
  return n;
}

namespace {

double apply_residual(const std::vector<Matrix>& inputs, const std::vector<Matrix>& expected,
                      const Matrix& o, double scale) {
  double worst = 0.0;
  for (std::size_t s = 0; s < expected.size(); ++s) {
    Matrix acc = -expected[s];
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      const Scalar c = o(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
      if (c != Scalar(0.0)) acc += c * inputs[t];
    }
    worst = std::max(worst, acc.norm());
  }
  return worst / std::max(1.0, scale);
}

}  // namespace

double fixed_point_residual(const MpsTensor& a, const PushingOperator& op) {
  const std::vector<Matrix> block = string_products(a, op.j + 1);
  return apply_residual(block, block, op.O, max_frobenius(block));
}

double transfer_residual(const MpsTensor& a, const PushingOperator& op, const StabilityWitness& w,
                         const Matrix& m) {
  const int d = a.d();
  const std::vector<Matrix> block = string_products(a, op.j + 1);
  const std::vector<Matrix> inner = string_products(a, op.j);
  const Matrix n = pushed_boundary(a, w, m);
  std::vector<Matrix> inputs(block.size());
  std::vector<Matrix> expected(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    expected[s] = op.side == Side::Left ? Matrix(n * block[s]) : Matrix(block[s] * n);
  }
  // Input string t = (t_0, rest) for left, (rest, t_j) for right.
  for (std::size_t t = 0; t < block.size(); ++t) {
    if (op.side == Side::Left) {
      const std::size_t first = t / inner.size();
      inputs[t] = a[static_cast<int>(first)] * m * inner[t % inner.size()];
    } else {
      const std::size_t last = t % static_cast<std::size_t>(d);
      inputs[t] = inner[t / static_cast<std::size_t>(d)] * m * a[static_cast<int>(last)];
    }
  }
  return apply_residual(inputs, expected, op.O, max_frobenius(block) * std::max(1.0, m.norm()));
}

IntersectionResult intersection_check(const MpsTensor& a, int k, const Tolerance& tol) {
  if (k < 1) throw ContractViolation("intersection length must be at least 1");
  checked_power(a.d(), k + 1, dense_cap());
  const Subspace sk = physical_subspace(a, k, tol);
  const Subspace site = Subspace::full(a.d());
  IntersectionResult out;
  out.lhs = intersect(tensor_product(sk, site), tensor_product(site, sk), tol);
  out.rhs = physical_subspace(a, k + 1, tol);
  out.lhs_dim = static_cast<int>(out.lhs.dim());
  out.rhs_dim = static_cast<int>(out.rhs.dim());
  out.holds = same_subspace(out.lhs, out.rhs, tol);
  return out;
}

GeneralizedIntersectionResult generalized_intersection_check(const MpsTensor& a,
                                                             const MpsTensor& b, int k, int kmax,
                                                             const Tolerance& tol) {
  if (a.d() != b.d()) throw DimensionMismatch("generalized intersection: physical dimensions differ");
  if (k < 1 || kmax < k + 1) throw ContractViolation("generalized intersection needs kmax ≥ k+1");
  GeneralizedIntersectionResult out;
  out.k = k;
  out.kmax = kmax;
  const IntersectionResult own = intersection_check(a, k, tol);
  out.holds_at_k = same_subspace(own.lhs, physical_subspace(b, k + 1, tol), tol);
  out.b_intersects_above = true;
  for (int j = k + 1; j <= kmax && out.b_intersects_above; ++j) {
    out.b_intersects_above = intersection_check(b, j, tol).holds;
  }
  return out;
}

}  // namespace mpsstab
