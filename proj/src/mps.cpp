#include "mpsstab/mps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace mpsstab {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Tr(X M) without forming the product.
Scalar trace_product(const Matrix& x, const Matrix& m) {
  return x.transpose().cwiseProduct(m).sum();
}

template <typename SiteFn>
StateVector contract_chain(const Matrix& boundary, int d, int n, std::size_t cap, SiteFn site) {
  if (n < 1) throw ContractViolation("chain length must be at least 1");
  const Eigen::Index total = checked_power(d, n, cap);
  std::vector<Matrix> prefix{boundary};
  for (int k = 0; k < n; ++k) {
    const MpsTensor& tensor = site(k);
    std::vector<Matrix> next;
    next.reserve(prefix.size() * static_cast<std::size_t>(d));
    for (const Matrix& p : prefix) {
      for (int i = 0; i < d; ++i) next.push_back(p * tensor[i]);
    }
    prefix = std::move(next);
  }
  StateVector out{n, d, Vector(total)};
  for (Eigen::Index s = 0; s < total; ++s) out.amplitudes(s) = prefix[static_cast<std::size_t>(s)].trace();
  return out;
}

}  // namespace

MpsTensor::MpsTensor(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw DimensionMismatch("MPS tensor needs at least one matrix");
  const Eigen::Index bond = matrices_.front().rows();
  if (bond <= 0) throw DimensionMismatch("MPS tensor bond dimension must be positive");
  bool nonzero = false;
  for (const Matrix& m : matrices_) {
    if (m.rows() != bond || m.cols() != bond) {
      throw DimensionMismatch("MPS tensor matrices must all be D×D with a common D");
    }
    if (!m.allFinite()) throw ContractViolation("MPS tensor has non-finite entries");
    nonzero = nonzero || max_abs(m) > 0.0;
  }
  if (!nonzero) throw ContractViolation("MPS tensor is identically zero");
}

std::size_t dense_cap() {
  if (const char* env = std::getenv("MPS_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultDenseCap;
}

Eigen::Index checked_power(int d, int n, std::size_t cap) {
  if (d < 1 || n < 0) throw ContractViolation("invalid dimension or length");
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) {
    total *= static_cast<std::size_t>(d);
    if (total > cap) {
      throw ResourceLimit(std::to_string(d) + "^" + std::to_string(n) +
                          " exceeds the dense cap of " + std::to_string(cap));
    }
  }
  return static_cast<Eigen::Index>(total);
}

Matrix unit_matrix(int D, int mu, int nu) {
  Matrix e = Matrix::Zero(D, D);
  e(mu, nu) = 1.0;
  return e;
}

std::vector<Matrix> string_products(const MpsTensor& a, int n) {
  if (n < 1) throw ContractViolation("string length must be at least 1");
  checked_power(a.d(), n, dense_cap());
  std::vector<Matrix> products = a.matrices();
  for (int k = 1; k < n; ++k) {
    std::vector<Matrix> next;
    next.reserve(products.size() * static_cast<std::size_t>(a.d()));
    for (const Matrix& p : products) {
      for (int i = 0; i < a.d(); ++i) next.push_back(p * a[i]);
    }
    products = std::move(next);
  }
  return products;
}

StateVector mps_state(const MpsTensor& a, const Matrix& boundary, int n) {
  if (boundary.rows() != a.D() || boundary.cols() != a.D()) {
    throw DimensionMismatch("boundary matrix must be D×D");
  }
  if (n < 1) throw ContractViolation("mps_state needs n ≥ 1");
  const std::vector<Matrix> products = string_products(a, n);
  StateVector out{n, a.d(), Vector(static_cast<Eigen::Index>(products.size()))};
  for (std::size_t s = 0; s < products.size(); ++s) {
    out.amplitudes(static_cast<Eigen::Index>(s)) = trace_product(boundary, products[s]);
  }
  return out;
}

StateVector mps_state_sites(const Matrix& boundary, const std::vector<MpsTensor>& sites) {
  if (sites.empty()) throw ContractViolation("mps_state_sites needs at least one site");
  const int d = sites.front().d();
  const int D = sites.front().D();
  for (const MpsTensor& t : sites) {
    if (t.d() != d || t.D() != D) throw DimensionMismatch("site tensors must share d and D");
  }
  if (boundary.rows() != D || boundary.cols() != D) {
    throw DimensionMismatch("boundary matrix must be D×D");
  }
  return contract_chain(boundary, d, static_cast<int>(sites.size()), dense_cap(),
                        [&](int k) -> const MpsTensor& { return sites[static_cast<std::size_t>(k)]; });
}

Subspace physical_subspace(const MpsTensor& a, int n, const Tolerance& tol) {
  const std::vector<Matrix> products = string_products(a, n);
  const int D = a.D();
  const auto ambient = static_cast<Eigen::Index>(products.size());
  // Column mu*D + nu holds the state with boundary e_{mu nu}: Tr(e_{mu nu} M) = M(nu, mu).
  Matrix states(ambient, D * D);
  for (Eigen::Index s = 0; s < ambient; ++s) {
    const Matrix& m = products[static_cast<std::size_t>(s)];
    for (int mu = 0; mu < D; ++mu) {
      for (int nu = 0; nu < D; ++nu) states(s, mu * D + nu) = m(nu, mu);
    }
  }
  // Every amplitude is bounded by (max_i ‖A_i‖_F)^n; below that scale it is rounding.
  double scale = 0.0;
  for (const Matrix& m : a.matrices()) scale = std::max(scale, m.norm());
  if (max_abs(states) <= tol.rank_rel * std::pow(scale, n)) return Subspace::zero(ambient);
  return orthonormal_basis(states, tol);
}

Subspace virtual_product(const Subspace& first, const Subspace& second, int D,
                         const Tolerance& tol) {
  const Eigen::Index ambient = static_cast<Eigen::Index>(D) * D;
  if (first.ambient_dim() != ambient || second.ambient_dim() != ambient) {
    throw DimensionMismatch("virtual_product: bases are not in M_D");
  }
  if (first.is_zero() || second.is_zero()) return Subspace::zero(ambient);
  Matrix products(ambient, first.dim() * second.dim());
  Eigen::Index col = 0;
  for (Eigen::Index p = 0; p < first.dim(); ++p) {
    const Matrix b = unvec(first.basis().col(p), D);
    for (Eigen::Index q = 0; q < second.dim(); ++q) {
      products.col(col++) = vec(b * unvec(second.basis().col(q), D));
    }
  }
  // Products of unit-norm factors: anything at rounding level is zero.
  if (products.colwise().norm().maxCoeff() <= tol.rank_rel) return Subspace::zero(ambient);
  return orthonormal_basis(products, tol);
}

Subspace virtual_subspace(const MpsTensor& a, int j, const Tolerance& tol) {
  if (j < 1) throw ContractViolation("virtual_subspace needs j ≥ 1");
  const int D = a.D();
  Matrix singles(static_cast<Eigen::Index>(D) * D, a.d());
  for (int i = 0; i < a.d(); ++i) singles.col(i) = vec(a[i]);
  Subspace power = orthonormal_basis(singles, tol);

  // Binary expansion of j: V_{a+b} = Span{V_a V_b}.
  bool have = false;
  Subspace acc;
  for (int bits = j;;) {
    if (bits & 1) {
      acc = have ? virtual_product(acc, power, D, tol) : power;
      have = true;
    }
    bits >>= 1;
    if (bits == 0) break;
    power = virtual_product(power, power, D, tol);
  }
  return acc;
}

Vector translate(const Vector& amplitudes, int d, int n, int times) {
  const Eigen::Index total = amplitudes.size();
  Eigen::Index expected = 1;
  for (int k = 0; k < n && expected <= total; ++k) expected *= d;
  if (n < 1 || d < 1 || expected != total) {
    throw DimensionMismatch("translate: vector length is not d^n");
  }
  const Eigen::Index high = total / d;
  times = ((times % n) + n) % n;
  Vector current = amplitudes;
  for (int t = 0; t < times; ++t) {
    Vector next(total);
    for (Eigen::Index j = 0; j < total; ++j) {
      // Output digits (j_1 … j_n) come from input digits (j_2 … j_n, j_1).
      next(j) = current((j % high) * d + j / high);
    }
    current = std::move(next);
  }
  return current;
}

StateVector translate(const StateVector& v) {
  return {v.n, v.d, translate(v.amplitudes, v.d, v.n, 1)};
}

Subspace translate(const Subspace& s, int d, int n, int times) {
  Matrix basis(s.ambient_dim(), s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    basis.col(k) = translate(Vector(s.basis().col(k)), d, n, times);
  }
  return Subspace(s.ambient_dim(), std::move(basis), s.tol());
}

Subspace periodic_subspace(const MpsTensor& a, int n, const Tolerance& tol) {
  const Subspace s = physical_subspace(a, n, tol);
  Subspace result = s;
  for (int t = 1; t < n && !result.is_zero(); ++t) {
    result = intersect(result, translate(s, a.d(), n, t), tol);
  }
  return result;
}

MpsTensor conjugate(const MpsTensor& a, const Matrix& t, const Tolerance& tol) {
  if (t.rows() != a.D() || t.cols() != a.D()) {
    throw DimensionMismatch("conjugate: T must be D×D");
  }
  Eigen::JacobiSVD<Matrix> svd(t);
  const auto& sigma = svd.singularValues();
  if (!(sigma(sigma.size() - 1) > tol.eig_zero * sigma(0))) {
    throw ContractViolation("conjugate: T is singular or too ill-conditioned");
  }
  const Matrix inv = t.partialPivLu().inverse();
  std::vector<Matrix> out;
  out.reserve(a.matrices().size());
  for (const Matrix& m : a.matrices()) out.push_back(t * m * inv);
  return MpsTensor(std::move(out));
}

MpsTensor direct_sum(const MpsTensor& a, const MpsTensor& b) {
  if (a.d() != b.d()) throw DimensionMismatch("direct_sum: physical dimensions differ");
  const int n = a.D() + b.D();
  std::vector<Matrix> out;
  for (int i = 0; i < a.d(); ++i) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(a.D(), a.D()) = a[i];
    m.bottomRightCorner(b.D(), b.D()) = b[i];
    out.push_back(std::move(m));
  }
  return MpsTensor(std::move(out));
}

MpsTensor transpose_tensor(const MpsTensor& a) {
  std::vector<Matrix> out;
  for (const Matrix& m : a.matrices()) out.push_back(m.transpose());
  return MpsTensor(std::move(out));
}

BlockDecomposition::BlockDecomposition(MpsTensor tensor, Matrix projector, const Tolerance& tol)
    : tensor_(std::move(tensor)), projector_(std::move(projector)), block_normal_(tensor_) {
  const int D = tensor_.D();
  if (projector_.rows() != D || projector_.cols() != D) {
    throw DimensionMismatch("block_decompose: projector must be D×D");
  }
  const Matrix& p = projector_;
  if (max_abs(p * p - p) > tol.eig_zero * std::max(1.0, max_abs(p))) {
    throw ContractViolation("block_decompose: P is not a projector");
  }
  const Matrix q = Matrix::Identity(D, D) - p;
  std::vector<Matrix> blocks;
  for (const Matrix& a : tensor_.matrices()) {
    if (max_abs(a * p - p * a * p) > tol.eig_zero * std::max(1.0, max_abs(a))) {
      throw ContractViolation("block_decompose: P is not invariant (A_i P != P A_i P)");
    }
    blocks.push_back(p * a * p + q * a * q);
  }
  block_normal_ = MpsTensor(std::move(blocks));
}

StateVector BlockDecomposition::wave_terms(const Matrix& boundary, int n) const {
  const int D = tensor_.D();
  const int d = tensor_.d();
  if (boundary.rows() != D || boundary.cols() != D) {
    throw DimensionMismatch("wave_terms: boundary must be D×D");
  }
  const Matrix& p = projector_;
  const Matrix q = Matrix::Identity(D, D) - p;
  std::vector<Matrix> left, middle, right;
  for (const Matrix& a : tensor_.matrices()) {
    left.push_back(p * a * p);
    middle.push_back(p * a * q);
    right.push_back(q * a * q);
  }
  // Any of these may be identically zero, which MpsTensor rejects; keep raw matrices.
  const Matrix x = q * boundary * p;
  StateVector out{n, d, Vector::Zero(checked_power(d, n, dense_cap()))};
  for (int ell = 1; ell <= n; ++ell) {
    std::vector<Matrix> prefix{x};
    for (int k = 1; k <= n; ++k) {
      const std::vector<Matrix>& site = k < ell ? left : (k == ell ? middle : right);
      std::vector<Matrix> next;
      next.reserve(prefix.size() * static_cast<std::size_t>(d));
      for (const Matrix& pm : prefix) {
        for (int i = 0; i < d; ++i) next.push_back(pm * site[static_cast<std::size_t>(i)]);
      }
      prefix = std::move(next);
    }
    for (std::size_t s = 0; s < prefix.size(); ++s) {
      out.amplitudes(static_cast<Eigen::Index>(s)) += prefix[s].trace();
    }
  }
  return out;
}

BlockDecomposition block_decompose(const MpsTensor& a, const Matrix& projector,
                                   const Tolerance& tol) {
  return BlockDecomposition(a, projector, tol);
}

}  // namespace mpsstab
