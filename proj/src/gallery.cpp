#include "mpsstab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mpsstab {

namespace tensors {

namespace {

const Scalar kI{0.0, 1.0};

Matrix mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

void require_vector(const Vector& v, const char* what) {
  if (v.size() == 0 || v.norm() == 0.0) {
    throw ContractViolation(std::string(what) + " must be a nonzero vector");
  }
}

}  // namespace

MpsTensor w_state() { return MpsTensor({mat2(1, 0, 0, 1), mat2(0, 1, 0, 0)}); }

MpsTensor w_general(const Vector& a, const Vector& b) {
  require_vector(a, "w_general: a");
  require_vector(b, "w_general: b");
  if (a.size() != b.size()) throw DimensionMismatch("w_general: a and b have different lengths");
  std::vector<Matrix> m;
  for (Eigen::Index i = 0; i < a.size(); ++i) m.push_back(mat2(a(i), b(i), 0, a(i)));
  return MpsTensor(std::move(m));
}

MpsTensor dicke(int D) {
  if (D < 2) throw ContractViolation("dicke: bond dimension must be at least 2");
  Matrix shift = Matrix::Zero(D, D);
  for (int i = 0; i + 1 < D; ++i) shift(i, i + 1) = 1.0;
  return MpsTensor({Matrix::Identity(D, D), shift});
}

MpsTensor w_momentum(double p) {
  if (!std::isfinite(p)) throw ContractViolation("w_momentum: momentum must be finite");
  return MpsTensor({mat2(std::exp(-kI * p), 0, 0, 1), mat2(0, 1, 0, 0)});
}

MpsTensor domain_wall() { return MpsTensor({mat2(1, 1, 0, 0), mat2(0, 0, 0, 1)}); }

MpsTensor domain_wall_general(const Vector& a, const Vector& b) {
  require_vector(a, "domain_wall_general: a");
  require_vector(b, "domain_wall_general: b");
  if (a.size() != b.size()) {
    throw DimensionMismatch("domain_wall_general: a and b have different lengths");
  }
  std::vector<Matrix> m;
  for (Eigen::Index i = 0; i < a.size(); ++i) m.push_back(mat2(a(i), a(i), 0, b(i)));
  return MpsTensor(std::move(m));
}

MpsTensor afm_ising() { return MpsTensor({mat2(0, 0, 1, 0), mat2(0, 1, 0, 0)}); }

MpsTensor ghz() { return MpsTensor({mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)}); }

MpsTensor aklt() {
  const double s = std::sqrt(2.0 / 3.0);
  const double z = std::sqrt(1.0 / 3.0);
  return MpsTensor({mat2(0, s, 0, 0), mat2(-z, 0, 0, z), mat2(0, 0, -s, 0)});
}

MpsTensor block_triangular(const MpsTensor& a, const std::vector<Matrix>& b, const MpsTensor& c) {
  if (a.d() != c.d() || static_cast<int>(b.size()) != a.d()) {
    throw DimensionMismatch("block_triangular: physical dimensions differ");
  }
  const int da = a.D();
  const int dc = c.D();
  std::vector<Matrix> out;
  for (int i = 0; i < a.d(); ++i) {
    const Matrix& bi = b[static_cast<std::size_t>(i)];
    if (bi.rows() != da || bi.cols() != dc) {
      throw DimensionMismatch("block_triangular: defect block must be D_A × D_C");
    }
    Matrix m = Matrix::Zero(da + dc, da + dc);
    m.topLeftCorner(da, da) = a[i];
    m.topRightCorner(da, dc) = bi;
    m.bottomRightCorner(dc, dc) = c[i];
    out.push_back(std::move(m));
  }
  return MpsTensor(std::move(out));
}

MpsTensor gen_w(const MpsTensor& a, const MpsTensor& b) {
  if (a.D() != b.D()) throw DimensionMismatch("gen_w: bond dimensions differ");
  return block_triangular(a, b.matrices(), a);
}

MpsTensor gen_dw(const MpsTensor& a, const MpsTensor& b) {
  if (a.D() != b.D()) throw DimensionMismatch("gen_dw: bond dimensions differ");
  return block_triangular(a, a.matrices(), b);
}

MpsTensor counterexample_a() { return MpsTensor({mat2(1, 1, 0, 0), mat2(0, 1, 0, 0)}); }

MpsTensor counterexample_c() {
  const MpsTensor a = counterexample_a();
  return direct_sum(a, transpose_tensor(a));
}

MpsTensor counterexample_d() {
  Matrix d0 = Matrix::Zero(4, 4);
  Matrix d1 = Matrix::Zero(4, 4);
  d0(1, 0) = 1.0;
  d0(1, 1) = 1.0;
  d0(2, 2) = 1.0;
  d1(2, 0) = 1.0;
  d1(3, 1) = 1.0;
  d1(3, 2) = 1.0;
  return MpsTensor({d0, d1});
}

MpsTensor embed_physical(const MpsTensor& a, int d) {
  if (d < a.d()) throw ContractViolation("embed_physical: target dimension is smaller");
  std::vector<Matrix> m = a.matrices();
  m.resize(static_cast<std::size_t>(d), Matrix::Zero(a.D(), a.D()));
  return MpsTensor(std::move(m));
}

MpsTensor single_index(const Matrix& m, int index, int d) {
  if (index < 0 || index >= d) throw ContractViolation("single_index: index out of range");
  if (m.rows() != m.cols()) throw DimensionMismatch("single_index: matrix must be square");
  std::vector<Matrix> out(static_cast<std::size_t>(d), Matrix::Zero(m.rows(), m.cols()));
  out[static_cast<std::size_t>(index)] = m;
  return MpsTensor(std::move(out));
}

}  // namespace tensors

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

namespace {

using namespace expect;

const double kPi = std::numbers::pi;

Expectation ex(Check c, std::string note) { return {std::move(c), std::move(note)}; }

Matrix power(const Matrix& m, int p) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

/// I - P_span(vectors) on ℓ qubits.
Matrix complement_projector(const std::vector<Vector>& vectors) {
  const Subspace s = orthonormal_basis(vectors);
  return Matrix::Identity(s.ambient_dim(), s.ambient_dim()) - s.projector();
}

Vector basis_state(Eigen::Index dim, Eigen::Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

void add_ground(std::vector<Expectation>& out, Boundary b, int ell, int nmin, int nmax,
                std::optional<int> degeneracy, const std::string& note) {
  for (int n = nmin; n <= nmax; ++n) {
    GroundSpace g;
    g.boundary = b;
    g.ell = ell;
    g.n = n;
    g.degeneracy = degeneracy;
    g.frustration_free = true;
    g.equals_mps = true;
    out.push_back(ex(g, note));
  }
}

void add_intersection(std::vector<Expectation>& out, int kmin, int kmax, bool holds,
                      const std::string& note) {
  for (int k = kmin; k <= kmax; ++k) out.push_back(ex(Intersection{k, holds, {}, {}}, note));
}

GalleryEntry make_w_state() {
  GalleryEntry e{"w_state", "W state tensor: A_0 = 1, A_1 = |0><1|", tensors::w_state(), {}};
  const MpsTensor& a = e.tensor;
  auto& x = e.expectations;
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "left 1-stable"));
  x.push_back(ex(SuppliedWitness{Side::Left, 1, a.matrices()}, "witness Y_i = A_i"));
  x.push_back(ex(Injectivity{6, std::nullopt}, "A_1 is nilpotent, so V_j never fills M_2"));
  for (int k = 2; k <= 6; ++k) {
    x.push_back(ex(Intersection{k, true, 2, {}}, "intersection at every k >= 2 with dim 2"));
  }
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = 0.5;
  h(1, 2) = -0.5;
  h(2, 1) = -0.5;
  h(2, 2) = 0.5;
  h(3, 3) = 1.0;
  x.push_back(ex(LocalTerm{2, h, 1e-12}, "|11><11| + (|01>-|10>)(<01|-<10|)/2"));
  add_ground(x, Boundary::Open, 2, 3, 8, 2, "span{|0...0>, |W_n>}");
  add_ground(x, Boundary::Periodic, 2, 3, 8, 2, "span{|0...0>, |W_n>}, translation invariant");
  return e;
}

GalleryEntry make_w_general() {
  Vector a(3), b(3);
  a << 1.0, 1.0, 0.0;
  b << 0.0, 1.0, 2.0;
  GalleryEntry e{"w_general", "W state on vectors a = (1,1,0), b = (0,1,2) of a qutrit",
                 tensors::w_general(a, b), {}};
  // c_i with sum a_i c_i = 1 and d_i with sum (c_i b_i + d_i a_i) = 0.
  const double an = a.squaredNorm();
  const Vector c = a.conjugate() / an;
  const Scalar cb = (c.array() * b.array()).sum();
  const Vector dv = -cb * a.conjugate() / an;
  std::vector<Matrix> y;
  for (int i = 0; i < 3; ++i) {
    Matrix m = c(i) * Matrix::Identity(2, 2);
    m(0, 1) += dv(i);
    y.push_back(m);
  }
  auto& x = e.expectations;
  x.push_back(ex(SuppliedWitness{Side::Left, 1, y}, "Y_i = c_i 1 + d_i |0><1|"));
  x.push_back(ex(SuppliedWitness{Side::Right, 1, y}, "sum Y_i A_i = 1 as well"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "1-stable"));
  add_intersection(x, 2, 5, true, "1-stable, so intersection for k >= 2");
  add_ground(x, Boundary::Open, 2, 3, 6, 2, "span{|a...a>, generalized W}");
  add_ground(x, Boundary::Periodic, 2, 3, 6, 2, "span{|a...a>, generalized W}");
  return e;
}

GalleryEntry make_dicke(int D) {
  GalleryEntry e{"dicke_" + std::to_string(D),
                 "Dicke tensor: A_0 = 1_D, A_1 = sum |i><i+1|, D = " + std::to_string(D),
                 tensors::dicke(D),
                 {}};
  const MpsTensor& a = e.tensor;
  auto& x = e.expectations;
  x.push_back(ex(expect::StabilityLength{Side::Left, D - 1}, "stability length D-1"));
  x.push_back(ex(SuppliedWitness{Side::Left, D - 1, {Matrix::Identity(D, D), power(a[1], D - 1)}},
                 "Y_0 = 1, Y_1 = (A_1)^{D-1}"));
  add_intersection(x, D, 6, true, "intersection for k >= D");
  for (int n = D; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, D}, "|0...0> and the Dicke states W^1..W^{D-1}"));
  }
  add_ground(x, Boundary::Open, D, D + 1, 8, D, "ground space spanned by the D Dicke states");
  add_ground(x, Boundary::Periodic, D, D + 1, 8, D, "periodic space equals the open one");
  return e;
}


GalleryEntry make_w_momentum(const std::string& name, double p, std::vector<int> quantized,
                             std::vector<int> generic) {
  GalleryEntry e{name, "W state with momentum p = " + std::to_string(p),
                 tensors::w_momentum(p), {}};
  auto& x = e.expectations;
  Matrix y0 = Matrix::Zero(2, 2);
  y0(0, 0) = std::polar(1.0, p);
  y0(1, 1) = 1.0;
  x.push_back(ex(SuppliedWitness{Side::Left, 1, {y0, Matrix::Zero(2, 2)}},
                 "Y_0 = e^{ip}|0><0| + |1><1|, Y_1 = 0"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "1-stable"));
  add_intersection(x, 2, 5, true, "1-stable, so intersection for k >= 2");
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = 0.5;
  h(1, 2) = -std::polar(1.0, -p) / 2.0;
  h(2, 1) = -std::polar(1.0, p) / 2.0;
  h(2, 2) = 0.5;
  h(3, 3) = 1.0;
  x.push_back(ex(LocalTerm{2, h, 1e-12}, "off-diagonal entries -e^{-ip}/2 and -e^{ip}/2"));
  add_ground(x, Boundary::Open, 2, 3, 8, 2, "span{|0...0>, |W_n(p)>} for every p");
  for (int n : quantized) {
    add_ground(x, Boundary::Periodic, 2, n, n, 2, "p in (2 pi / n) Z: |W_n(p)> is periodic");
  }
  for (int n : generic) {
    add_ground(x, Boundary::Periodic, 2, n, n, 1, "p not in (2 pi / n) Z: only |0...0> is periodic");
  }
  return e;
}

GalleryEntry make_domain_wall() {
  GalleryEntry e{"domain_wall", "domain-wall superposition: A_0 = [[1,1],[0,0]], A_1 = |1><1|",
                 tensors::domain_wall(), {}};
  const MpsTensor& a = e.tensor;
  auto& x = e.expectations;
  const Matrix one = Matrix::Identity(2, 2);
  x.push_back(ex(SuppliedWitness{Side::Left, 2, {a[0] * (one - a[1]), a[1]}},
                 "Y_0 = A_0(1 - A_1), Y_1 = A_1 at j = 2"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 2}, "2-stable and not 1-stable"));
  x.push_back(ex(Intersection{2, false, 4, {}}, "k = 2 leaves |001> and |011> unpaired"));
  add_intersection(x, 3, 6, true, "2-stable, so intersection for k >= 3");
  for (int n = 2; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 3}, "span{|0...0>, |1...1>, |DW_n>}"));
    x.push_back(ex(SubspaceDim{true, n, 2}, "only the two product states are periodic"));
  }
  std::vector<Vector> span{basis_state(8, 0), basis_state(8, 7),
                           basis_state(8, 1) + basis_state(8, 3)};
  x.push_back(ex(LocalTerm{3, complement_projector(span), 1e-12},
                 "I minus the projector onto span{|000>, |111>, |001>+|011>}"));
  add_ground(x, Boundary::Open, 3, 4, 8, 3, "3-local ground space is S_n");
  add_ground(x, Boundary::Periodic, 3, 4, 8, 2, "periodic space is S_n(|0>) + S_n(|1>)");
  return e;
}

GalleryEntry make_domain_wall_general() {
  Vector a(3), b(3);
  a << 1.0, 1.0, 0.0;
  b << 0.0, 1.0, 2.0;
  GalleryEntry e{"domain_wall_general", "domain walls between a = (1,1,0) and b = (0,1,2)",
                 tensors::domain_wall_general(a, b), {}};
  auto& x = e.expectations;
  x.push_back(ex(StableAt{Side::Left, 2}, "2-stable"));
  for (int n = 2; n <= 5; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 3}, "span{|a...a>, |b...b>, |DW^ab_n>}"));
  }
  add_intersection(x, 3, 5, true, "2-stable, so intersection for k >= 3");
  add_ground(x, Boundary::Open, 3, 4, 6, 3, "3-local ground space is S_n");
  return e;
}

GalleryEntry make_afm_ising() {
  GalleryEntry e{"afm_ising", "antiferromagnetic Ising: A_0 = |1><0|, A_1 = |0><1|",
                 tensors::afm_ising(), {}};
  const MpsTensor& a = e.tensor;
  auto& x = e.expectations;
  x.push_back(ex(SuppliedWitness{Side::Left, 1, {a[1], a[0]}}, "Y_0 = A_1, Y_1 = A_0"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "1-stable"));
  add_intersection(x, 2, 6, true, "1-stable, so intersection for k >= 2");
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = 1.0;
  h(3, 3) = 1.0;
  x.push_back(ex(LocalTerm{2, h, 1e-12}, "h = |00><00| + |11><11|"));
  add_ground(x, Boundary::Open, 2, 3, 8, 2, "span{|0101...>, |1010...>}");
  for (int n : {4, 6, 8}) {
    add_ground(x, Boundary::Periodic, 2, n, n, 2, "even n: the full S_n is periodic");
  }
  for (int n : {3, 5, 7}) {
    GroundSpace g;
    g.boundary = Boundary::Periodic;
    g.ell = 2;
    g.n = n;
    g.degeneracy = 2 * n;
    g.frustration_free = false;
    g.min_energy = 1e-6;
    x.push_back(ex(g, "odd n: frustrated, one violated term, degeneracy 2n"));
    x.push_back(ex(SubspaceDim{true, n, 0}, "odd n: no periodic MPS"));
  }
  return e;
}

GalleryEntry make_ghz() {
  GalleryEntry e{"ghz", "GHZ tensor: A_0 = |0><0|, A_1 = |1><1|", tensors::ghz(), {}};
  auto& x = e.expectations;
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "block injective, Y_i = A_i"));
  x.push_back(ex(expect::StabilityLength{Side::Right, 1}, "block injective, Y_i = A_i"));
  x.push_back(ex(Intersection{1, false, 4, {}}, "S_1 is the whole qubit"));
  add_intersection(x, 2, 6, true, "1-stable, so intersection for k >= 2");
  add_ground(x, Boundary::Open, 2, 3, 8, 2, "span{|0...0>, |1...1>}");
  add_ground(x, Boundary::Periodic, 2, 3, 8, 2, "span{|0...0>, |1...1>}");
  return e;
}

GalleryEntry make_aklt() {
  GalleryEntry e{"aklt", "spin-1 valence-bond tensor", tensors::aklt(), {}};
  auto& x = e.expectations;
  x.push_back(ex(Injectivity{4, 2}, "normal, injective on two sites"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 2}, "2-stable but not 1-stable"));
  x.push_back(ex(expect::StabilityLength{Side::Right, 2}, "2-stable but not 1-stable"));
  add_intersection(x, 2, 4, true, "intersection already on two sites");
  for (int n = 3; n <= 6; ++n) {
    GroundSpace g;
    g.boundary = Boundary::Open;
    g.ell = 2;
    g.n = n;
    g.degeneracy = 4;
    g.frustration_free = true;
    g.equals_mps = true;
    x.push_back(ex(g, "intersection at k = 2 makes the 2-local ground space S_n"));
  }
  return e;
}

GalleryEntry make_counterexample_a() {
  GalleryEntry e{"counterexample_a", "A_0 = [[1,1],[0,0]], A_1 = [[0,1],[0,0]]",
                 tensors::counterexample_a(), {}};
  const MpsTensor& a = e.tensor;
  auto& x = e.expectations;
  x.push_back(ex(SuppliedWitness{Side::Left, 1, {a[0], Matrix::Zero(2, 2)}},
                 "Y_0 = Z = A_0, Y_1 = 0"));
  x.push_back(ex(expect::StabilityLength{Side::Left, 1}, "left 1-stable, not injective"));
  add_intersection(x, 2, 6, true, "left 1-stable");
  for (int n = 2; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 2}, "span{|0...00>, |0...01>}"));
  }
  return e;
}

GalleryEntry make_counterexample_a_transpose() {
  const MpsTensor b = transpose_tensor(tensors::counterexample_a());
  GalleryEntry e{"counterexample_a_transpose", "transpose of counterexample_a", b, {}};
  auto& x = e.expectations;
  x.push_back(ex(SuppliedWitness{Side::Right, 1, {b[0], Matrix::Zero(2, 2)}},
                 "transposed witness on the other side"));
  x.push_back(ex(expect::StabilityLength{Side::Right, 1}, "right 1-stable"));
  add_intersection(x, 2, 6, true, "right 1-stable");
  for (int n = 2; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 2}, "span{|10...0>, |00...0>}"));
  }
  return e;
}

GalleryEntry make_counterexample_c() {
  GalleryEntry e{"counterexample_c", "direct sum of counterexample_a and its transpose",
                 tensors::counterexample_c(), {}};
  const MpsTensor d = tensors::counterexample_d();
  auto& x = e.expectations;
  x.push_back(ex(NoStability{Side::Left, 5, 1e-3}, "neither left nor right stable"));
  x.push_back(ex(NoStability{Side::Right, 5, 1e-3}, "neither left nor right stable"));
  for (int n = 3; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 3}, "span{|0^n>, |0^{n-1}1>, |10^{n-1}>}"));
  }
  x.push_back(ex(Intersection{2, false, 5, {}}, "k = 2 also keeps |010>"));
  for (int k = 3; k <= 5; ++k) {
    x.push_back(ex(Intersection{k, false, 4, d}, "intersection is S_{k+1}(D), not S_{k+1}(C)"));
  }
  x.push_back(ex(GeneralizedIntersection{d, 3, 6}, "D generalizes the intersection of C"));
  for (int n = 5; n <= 7; ++n) {
    GroundSpace g;
    g.boundary = Boundary::Open;
    g.ell = 3;
    g.n = n;
    g.degeneracy = 4;
    g.frustration_free = true;
    g.contains_mps = true;
    g.equals_physical_of = d;
    x.push_back(ex(g, "frustration-free ground space is S_n(D)"));
  }
  return e;
}

GalleryEntry make_counterexample_d() {
  GalleryEntry e{"counterexample_d", "4x4 tensor spanning the intersections of counterexample_c",
                 tensors::counterexample_d(), {}};
  auto& x = e.expectations;
  x.push_back(ex(Intersection{2, false, 8, {}}, "S_2(D) is the whole two-qubit space"));
  add_intersection(x, 3, 6, true, "satisfies the usual intersection property");
  for (int n = 3; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 4}, "span{|0^n>, |0^{n-1}1>, |10^{n-1}>, |10^{n-2}1>}"));
  }
  return e;
}

GalleryEntry make_gen_w() {
  const MpsTensor a = tensors::embed_physical(tensors::afm_ising(), 3);
  const MpsTensor b = tensors::single_index(Matrix::Identity(2, 2), 2, 3);
  GalleryEntry e{"gen_w", "moving |2> wave on an antiferromagnetic background",
                 tensors::gen_w(a, b), {}};
  auto& x = e.expectations;
  add_intersection(x, 2, 5, true, "A has intersection at k >= 2 and S_1(A), S_1(B) are disjoint");
  return e;
}

GalleryEntry make_gen_dw() {
  const MpsTensor a = tensors::embed_physical(tensors::w_state(), 3);
  const MpsTensor b = tensors::single_index(Matrix::Identity(2, 2), 2, 3);
  GalleryEntry e{"gen_dw", "domain walls between the W tensor and |2>", tensors::gen_dw(a, b), {}};
  auto& x = e.expectations;
  add_intersection(x, 3, 5, true, "left 1-stable A, right 1-stable B: intersection for k >= 3");
  for (int n = 3; n <= 6; ++n) {
    x.push_back(ex(SubspaceDim{true, n, 3}, "periodic space is S_n^P(A) + S_n^P(B)"));
  }
  return e;
}

GalleryEntry make_block_triangular() {
  const Matrix one = Matrix::Identity(1, 1);
  const MpsTensor a = tensors::single_index(one, 0, 3);
  const MpsTensor c = tensors::single_index(one, 2, 3);
  const MpsTensor b = tensors::single_index(one, 1, 3);
  GalleryEntry e{"block_triangular", "domain walls between |0> and |2> with a |1> defect",
                 tensors::block_triangular(a, b.matrices(), c), {}};
  auto& x = e.expectations;
  for (int n = 2; n <= 5; ++n) {
    x.push_back(ex(SubspaceDim{false, n, 3}, "|0...0>, |2...2> and the defect superposition"));
  }
  return e;
}

using Factory = GalleryEntry (*)();

const std::vector<std::pair<std::string, Factory>>& factories() {
  static const std::vector<std::pair<std::string, Factory>> f{
      {"afm_ising", &make_afm_ising},
      {"aklt", &make_aklt},
      {"block_triangular", &make_block_triangular},
      {"counterexample_a", &make_counterexample_a},
      {"counterexample_a_transpose", &make_counterexample_a_transpose},
      {"counterexample_c", &make_counterexample_c},
      {"counterexample_d", &make_counterexample_d},
      {"dicke_3", [] { return make_dicke(3); }},
      {"dicke_4", [] { return make_dicke(4); }},
      {"domain_wall", &make_domain_wall},
      {"domain_wall_general", &make_domain_wall_general},
      {"gen_dw", &make_gen_dw},
      {"gen_w", &make_gen_w},
      {"ghz", &make_ghz},
      {"w_general", &make_w_general},
      {"w_momentum_1rad", [] { return make_w_momentum("w_momentum_1rad", 1.0, {}, {4, 5}); }},
      {"w_momentum_2pi_5",
       [] { return make_w_momentum("w_momentum_2pi_5", 2.0 * kPi / 5.0, {5}, {3, 4, 6}); }},
      {"w_momentum_pi_2",
       [] { return make_w_momentum("w_momentum_pi_2", kPi / 2.0, {4, 8}, {3, 5, 6}); }},
      {"w_state", &make_w_state},
  };
  return f;
}

std::string side_name(Side s) { return to_string(s); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

int cap_dimension(const expect::Check& c) {
  return std::holds_alternative<GroundSpace>(c) ? 1 : 0;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass(std::string detail) { return {true, std::move(detail)}; }

Outcome run_check(const MpsTensor& a, const Check& check, const Tolerance& tol) {
  return std::visit(
      Overloaded{
          [&](const Injectivity& c) {
            const auto len = injectivity_length(a, c.jmax, tol);
            const std::string got = len ? std::to_string(*len) : "none";
            return len == c.length ? pass("length " + got) : fail("length " + got);
          },
          [&](const expect::StabilityLength& c) {
            const auto len = stability_length(a, c.side, c.j + 1, tol);
            if (!len) return fail("no witness up to j = " + std::to_string(c.j + 1));
            std::string d = "first witness at j = " + std::to_string(len->j);
            if (len->j != c.j) return fail(d);
            if (len->persistence_checked && !len->persists) return fail(d + ", not persistent");
            return pass(d);
          },
          [&](const StableAt& c) {
            const auto s = stability_witness(a, c.j, c.side, tol);
            return s.found ? pass("residual " + fmt(s.residual()))
                           : fail("residual " + fmt(s.residual()));
          },
          [&](const SuppliedWitness& c) {
            StabilityWitness w;
            w.side = c.side;
            w.j = c.j;
            w.Y = c.Y;
            const auto r = check_witness(a, w, tol);
            const std::string d =
                "residuals " + fmt(r.residual_invariance) + ", " + fmt(r.residual_identity);
            return r.valid ? pass(d) : fail(d);
          },
          [&](const NoStability& c) {
            double lowest = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= c.jmax; ++j) {
              const auto s = stability_witness(a, j, c.side, tol);
              if (s.found) return fail("witness found at j = " + std::to_string(j));
              lowest = std::min(lowest, s.residual());
            }
            const std::string d = "smallest residual " + fmt(lowest);
            return lowest > c.min_residual ? pass(d) : fail(d);
          },
          [&](const Intersection& c) {
            const auto r = intersection_check(a, c.k, tol);
            std::string d = "lhs " + std::to_string(r.lhs_dim) + ", rhs " +
                            std::to_string(r.rhs_dim);
            if (r.holds != c.holds) return fail(d + (r.holds ? ", holds" : ", fails"));
            if (c.lhs_dim && *c.lhs_dim != r.lhs_dim) return fail(d);
            if (c.lhs_equals) {
              const Subspace other = physical_subspace(*c.lhs_equals, c.k + 1, tol);
              if (!same_subspace(r.lhs, other, tol)) return fail(d + ", lhs differs from other S");
            }
            return pass(d);
          },
          [&](const GeneralizedIntersection& c) {
            const auto r = generalized_intersection_check(a, c.other, c.k, c.kmax, tol);
            const std::string d = std::string("at k: ") + (r.holds_at_k ? "yes" : "no") +
                                  ", above: " + (r.b_intersects_above ? "yes" : "no");
            return r.holds_at_k && r.b_intersects_above ? pass(d) : fail(d);
          },
          [&](const SubspaceDim& c) {
            const Subspace s = c.periodic ? periodic_subspace(a, c.n, tol)
                                          : physical_subspace(a, c.n, tol);
            const std::string d = "dim " + std::to_string(s.dim());
            return s.dim() == c.dim ? pass(d) : fail(d);
          },
          [&](const LocalTerm& c) {
            const Matrix h = local_term(a, c.ell, tol);
            if (h.rows() != c.h.rows() || h.cols() != c.h.cols()) return fail("shape differs");
            const double err = (h - c.h).cwiseAbs().maxCoeff();
            const std::string d = "max deviation " + fmt(err);
            return err <= c.tol ? pass(d) : fail(d);
          },
          [&](const GroundSpace& c) {
            const ParentHamiltonian h = build(a, c.ell, c.n, c.boundary, tol);
            const GroundSpaceResult g = ground_space(h, tol);
            std::string d = "E0 " + fmt(g.energy) + ", degeneracy " + std::to_string(g.degeneracy);
            if (c.degeneracy && *c.degeneracy != g.degeneracy) return fail(d);
            if (c.frustration_free && *c.frustration_free != g.frustration_free) {
              return fail(d + (g.frustration_free ? ", frustration free" : ", frustrated"));
            }
            if (c.min_energy && !(g.energy > *c.min_energy)) return fail(d);
            if (c.equals_mps || c.contains_mps) {
              const Subspace mps = c.boundary == Boundary::Open ? physical_subspace(a, c.n, tol)
                                                                : periodic_subspace(a, c.n, tol);
              if (c.equals_mps && !same_subspace(g.space, mps, tol)) {
                return fail(d + ", differs from the MPS space (dim " + std::to_string(mps.dim()) +
                            ")");
              }
              if (c.contains_mps && !contains(g.space, mps, tol)) {
                return fail(d + ", misses part of the MPS space");
              }
            }
            if (c.equals_physical_of &&
                !same_subspace(g.space, physical_subspace(*c.equals_physical_of, c.n, tol), tol)) {
              return fail(d + ", differs from the other tensor's S_n");
            }
            return pass(d);
          },
      },
      check);
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, f] : factories()) out.push_back(name);
  return out;
}

GalleryEntry builtin(const std::string& name) {
  for (const auto& [n, f] : factories()) {
    if (n == name) return f();
  }
  throw ContractViolation("unknown gallery entry '" + name + "'");
}

std::vector<GalleryEntry> builtin_entries() {
  std::vector<GalleryEntry> out;
  for (const auto& [name, f] : factories()) out.push_back(f());
  return out;
}

int sites_required(const expect::Check& check) {
  return std::visit(
      Overloaded{
          [](const Intersection& c) { return c.k + 1; },
          [](const GeneralizedIntersection& c) { return c.kmax + 1; },
          [](const SubspaceDim& c) { return c.n; },
          [](const LocalTerm& c) { return c.ell; },
          [](const GroundSpace& c) { return c.n; },
          [](const auto&) { return 0; },
      },
      check);
}

std::string describe(const expect::Check& check) {
  return std::visit(
      Overloaded{
          [](const Injectivity& c) {
            return "injectivity length " + (c.length ? std::to_string(*c.length) : "none") +
                   " up to j = " + std::to_string(c.jmax);
          },
          [](const expect::StabilityLength& c) {
            return side_name(c.side) + " stability length " + std::to_string(c.j);
          },
          [](const StableAt& c) {
            return side_name(c.side) + " witness at j = " + std::to_string(c.j);
          },
          [](const SuppliedWitness& c) {
            return "supplied " + side_name(c.side) + " witness at j = " + std::to_string(c.j);
          },
          [](const NoStability& c) {
            return "no " + side_name(c.side) + " witness up to j = " + std::to_string(c.jmax);
          },
          [](const Intersection& c) {
            std::string s = "intersection at k = " + std::to_string(c.k) +
                            (c.holds ? " holds" : " fails");
            if (c.lhs_dim) s += ", lhs dim " + std::to_string(*c.lhs_dim);
            if (c.lhs_equals) s += ", lhs = S_k+1 of other tensor";
            return s;
          },
          [](const GeneralizedIntersection& c) {
            return "generalized intersection at k = " + std::to_string(c.k) + " through " +
                   std::to_string(c.kmax);
          },
          [](const SubspaceDim& c) {
            return std::string(c.periodic ? "dim S^P_" : "dim S_") + std::to_string(c.n) + " = " +
                   std::to_string(c.dim);
          },
          [](const LocalTerm& c) { return std::to_string(c.ell) + "-local term"; },
          [](const GroundSpace& c) {
            std::string s = std::string(to_string(c.boundary)) + " ground space, ell " +
                            std::to_string(c.ell) + ", n " + std::to_string(c.n);
            if (c.degeneracy) s += ", degeneracy " + std::to_string(*c.degeneracy);
            return s;
          },
      },
      check);
}

CheckRecord evaluate(const GalleryEntry& entry, const Expectation& e, int nmax,
                     const Tolerance& tol) {
  CheckRecord rec;
  rec.entry = entry.name;
  rec.check = describe(e.check);
  rec.note = e.note;
  const int sites = sites_required(e.check);
  if (sites > nmax) {
    rec.status = Status::Skip;
    rec.detail = "needs " + std::to_string(sites) + " sites";
    return rec;
  }
  if (sites > 0) {
    const std::size_t cap = cap_dimension(e.check) ? hamiltonian_cap() : dense_cap();
    double dim = std::pow(static_cast<double>(entry.tensor.d()), sites);
    if (dim > static_cast<double>(cap)) {
      rec.status = Status::Skip;
      rec.detail = "d^n exceeds the dense cap";
      return rec;
    }
  }
  try {
    const Outcome o = run_check(entry.tensor, e.check, tol);
    rec.status = o.pass ? Status::Pass : Status::Fail;
    rec.detail = o.detail;
  } catch (const std::exception& err) {
    rec.status = Status::Fail;
    rec.detail = std::string("error: ") + err.what();
  }
  return rec;
}

std::vector<CheckRecord> run_entries(const std::vector<GalleryEntry>& entries, int nmax,
                                     const Tolerance& tol) {
  std::vector<const GalleryEntry*> order;
  for (const auto& e : entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const GalleryEntry* x, const GalleryEntry* y) { return x->name < y->name; });
  std::vector<CheckRecord> out;
  for (const GalleryEntry* e : order) {
    for (const auto& x : e->expectations) out.push_back(evaluate(*e, x, nmax, tol));
  }
  return out;
}

std::vector<CheckRecord> run_all(int nmax, const Tolerance& tol) {
  return run_entries(builtin_entries(), nmax, tol);
}

GenDwReport gen_dw_property_test(const MpsTensor& a, const MpsTensor& b, int kmax, int nmax,
                                 const Tolerance& tol) {
  GenDwReport rep;
  if (a.d() != b.d()) throw DimensionMismatch("gen_dw_property_test: physical dimensions differ");
  if (a.D() != b.D()) throw DimensionMismatch("gen_dw_property_test: bond dimensions differ");
  const auto ja = stability_length(a, Side::Left, a.D() * a.D() + 1, tol);
  const auto jb = stability_length(b, Side::Right, b.D() * b.D() + 1, tol);
  if (!ja || !jb) {
    rep.status = Status::Skip;
    rep.reason = !ja ? "A has no left witness" : "B has no right witness";
    return rep;
  }
  rep.j_a = ja->j;
  rep.j_b = jb->j;
  if (intersect(physical_subspace(a, 1, tol), physical_subspace(b, 1, tol), tol).dim() != 0) {
    rep.status = Status::Skip;
    rep.reason = "S_1(A) and S_1(B) intersect";
    return rep;
  }
  const MpsTensor c = tensors::gen_dw(a, b);
  const auto feasible = [&](int sites) {
    return std::pow(static_cast<double>(c.d()), sites) <= static_cast<double>(dense_cap());
  };
  for (int k = rep.j_a + rep.j_b + 1; k <= kmax && feasible(k + 1); ++k) {
    const auto r = intersection_check(c, k, tol);
    if (!r.holds) {
      rep.failures.push_back("intersection fails at k = " + std::to_string(k) + " (lhs " +
                             std::to_string(r.lhs_dim) + ", rhs " + std::to_string(r.rhs_dim) +
                             ")");
    }
  }
  for (int n = 2; n <= nmax && feasible(n); ++n) {
    const Subspace expected = sum(periodic_subspace(a, n, tol), periodic_subspace(b, n, tol), tol);
    const Subspace got = periodic_subspace(c, n, tol);
    if (!same_subspace(got, expected, tol)) {
      rep.failures.push_back("periodic space differs at n = " + std::to_string(n) + " (dim " +
                             std::to_string(got.dim()) + " vs " +
                             std::to_string(expected.dim()) + ")");
    }
  }
  rep.status = rep.failures.empty() ? Status::Pass : Status::Fail;
  if (!rep.failures.empty()) rep.reason = rep.failures.front();
  return rep;
}

}  // namespace mpsstab
