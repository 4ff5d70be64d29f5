// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpsstab/certify.hpp"
#include "mpsstab/gallery.hpp"
#include "mpsstab/hamiltonian.hpp"

using namespace mpsstab;

namespace {

constexpr double kSubspaceTol = 1e-8;

class Criterion {
 public:
  void fail(const std::string& what) {
    if (failures_.size() < 8) failures_.push_back(what);
    ++count_;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << count_ << " violation(s)";
    for (const auto& f : failures_) os << "; " << f;
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

std::string str(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double mutual(const Subspace& a, const Subspace& b) {
  return std::max(containment_residual(a, b), containment_residual(b, a));
}

bool same(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && mutual(a, b) <= kSubspaceTol;
}

Eigen::Index power2(int n) { return Eigen::Index{1} << n; }

/// Equal-weight superposition of all n-bit strings with exactly p ones.
Vector dicke_state(int n, int p) {
  Vector v = Vector::Zero(power2(n));
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (std::popcount(static_cast<unsigned long long>(x)) == p) v(x) = 1.0;
  }
  return v / v.norm();
}

Vector basis(Eigen::Index dim, Eigen::Index i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

/// Bit string of length n written most significant first.
Eigen::Index bits(const std::string& s) { return static_cast<Eigen::Index>(std::stoull(s, nullptr, 2)); }

std::string alternating(int n, char first) {
  std::string s;
  for (int k = 0; k < n; ++k) s.push_back(((k % 2 == 0) == (first == '0')) ? '0' : '1');
  return s;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = g(rng);
      m(r, c) = Scalar(re, g(rng));
    }
  }
  return m;
}

Matrix random_gauge(std::mt19937_64& rng, int D) {
  for (;;) {
    const Matrix t = Matrix::Identity(D, D) + 0.4 * random_matrix(rng, D, D);
    Eigen::JacobiSVD<Matrix> svd(t);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) <= 20.0) return t;
  }
}

struct Named {
  std::string name;
  MpsTensor tensor;
};

std::vector<Named> random_ensemble() {
  std::vector<Named> out;
  for (int s = 0; s < 50; ++s) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(s));
    const int D = s < 25 ? 2 : 3;
    std::vector<Matrix> m;
    for (int i = 0; i < 2; ++i) m.push_back(random_matrix(rng, D, D));
    out.push_back({"random#" + std::to_string(s), MpsTensor(std::move(m))});
  }
  return out;
}

std::vector<Named> gallery_tensors() {
  std::vector<Named> out;
  for (const auto& e : builtin_entries()) out.push_back({e.name, e.tensor});
  return out;
}

/// Ground-space check of one (ℓ, n, boundary) against an expected subspace.
void ground_equals(Criterion& c, const std::string& tag, const MpsTensor& a, int ell, int n,
                   Boundary b, const Subspace& want, int degeneracy) {
  const GroundSpaceResult g = ground_space(build(a, ell, n, b));
  c.expect(g.frustration_free, tag + ": E0 = " + str(g.energy));
  c.expect(g.degeneracy == degeneracy,
           tag + ": degeneracy " + std::to_string(g.degeneracy) + ", want " + std::to_string(degeneracy));
  const double r = mutual(g.space, want);
  c.expect(r <= kSubspaceTol, tag + ": ground-space residual " + str(r));
}

// 1 -----------------------------------------------------------------------
void criterion_w(Criterion& c) {
  const MpsTensor w = tensors::w_state();
  for (int n = 3; n <= 8; ++n) {
    const Subspace want = orthonormal_basis(std::vector<Vector>{basis(power2(n), 0), dicke_state(n, 1)});
    ground_equals(c, "OBC n=" + std::to_string(n), w, 2, n, Boundary::Open, want, 2);
    ground_equals(c, "PBC n=" + std::to_string(n), w, 2, n, Boundary::Periodic, want, 2);
  }
  c.expect(stability_witness(w, 1, Side::Left).found, "no witness at j = 1");
  const WitnessCheck y = check_witness(w, StabilityWitness{Side::Left, 1, w.matrices()});
  c.expect(y.residual_invariance <= 1e-12 && y.residual_identity <= 1e-12,
           "Y_i = A_i residuals " + str(y.residual_invariance) + ", " + str(y.residual_identity));
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = h(2, 2) = 0.5;
  h(1, 2) = h(2, 1) = -0.5;
  h(3, 3) = 1.0;
  const double dh = (local_term(w, 2) - h).cwiseAbs().maxCoeff();
  c.expect(dh <= 1e-12, "local term differs by " + str(dh));
}

// 2 -----------------------------------------------------------------------
void criterion_dicke(Criterion& c) {
  for (int D : {3, 4}) {
    const MpsTensor a = tensors::dicke(D);
    const auto len = stability_length(a, Side::Left, D * D + 1);
    c.expect(len && len->j == D - 1, "D=" + std::to_string(D) + ": stability length " +
                                         (len ? std::to_string(len->j) : std::string("none")));
    for (int n = D + 1; n <= 8; ++n) {
      const std::string tag = "D=" + std::to_string(D) + " n=" + std::to_string(n);
      const GroundSpaceResult g = ground_space(build(a, D, n, Boundary::Open));
      c.expect(g.degeneracy == D, tag + ": degeneracy " + std::to_string(g.degeneracy));
      for (int p = 0; p < D; ++p) {
        const Subspace s = orthonormal_basis(std::vector<Vector>{dicke_state(n, p)});
        const double r = containment_residual(g.space, s);
        c.expect(r <= kSubspaceTol, tag + " p=" + std::to_string(p) + ": residual " + str(r));
      }
    }
  }
}

// 3 -----------------------------------------------------------------------
void criterion_momentum(Criterion& c) {
  const int n = 5;
  for (const auto& [p, periodic_deg] : std::vector<std::pair<double, int>>{
           {2.0 * std::numbers::pi / 5.0, 2}, {1.0, 1}}) {
    const std::string tag = "p=" + str(p);
    const MpsTensor a = tensors::w_momentum(p);
    const GroundSpaceResult pbc = ground_space(build(a, 2, n, Boundary::Periodic));
    c.expect(pbc.degeneracy == periodic_deg, tag + ": PBC degeneracy " + std::to_string(pbc.degeneracy));
    const GroundSpaceResult obc = ground_space(build(a, 2, n, Boundary::Open));
    c.expect(obc.degeneracy == 2, tag + ": OBC degeneracy " + std::to_string(obc.degeneracy));
    Matrix h = Matrix::Zero(4, 4);
    h(1, 1) = h(2, 2) = 0.5;
    h(1, 2) = -std::polar(1.0, -p) / 2.0;
    h(2, 1) = -std::polar(1.0, p) / 2.0;
    h(3, 3) = 1.0;
    const double dh = (local_term(a, 2) - h).cwiseAbs().maxCoeff();
    c.expect(dh <= 1e-12, tag + ": local term differs by " + str(dh));
  }
}

// 4 -----------------------------------------------------------------------
void criterion_domain_wall(Criterion& c) {
  const MpsTensor a = tensors::domain_wall();
  const Matrix one = Matrix::Identity(2, 2);
  const WitnessCheck y = check_witness(a, StabilityWitness{Side::Left, 2, {a[0] * (one - a[1]), a[1]}});
  c.expect(y.valid, "supplied witness residuals " + str(y.residual_invariance) + ", " +
                        str(y.residual_identity));
  const IntersectionResult k2 = intersection_check(a, 2);
  c.expect(!k2.holds && k2.lhs_dim == 4,
           "k=2: holds=" + std::to_string(k2.holds) + " lhs " + std::to_string(k2.lhs_dim));
  for (int k = 3; k <= 6; ++k) c.expect(intersection_check(a, k).holds, "k=" + std::to_string(k) + " fails");
  for (int n = 4; n <= 8; ++n) {
    const GroundSpaceResult g = ground_space(build(a, 3, n, Boundary::Open));
    c.expect(g.degeneracy == 3, "n=" + std::to_string(n) + ": degeneracy " + std::to_string(g.degeneracy));
  }
  const Subspace span = orthonormal_basis(std::vector<Vector>{
      basis(8, bits("000")), basis(8, bits("111")), basis(8, bits("001")) + basis(8, bits("011"))});
  const Matrix h = Matrix::Identity(8, 8) - span.projector();
  const double dh = (local_term(a, 3) - h).cwiseAbs().maxCoeff();
  c.expect(dh <= 1e-12, "local term differs by " + str(dh));
}

// 5 -----------------------------------------------------------------------
void criterion_afm(Criterion& c) {
  const MpsTensor a = tensors::afm_ising();
  for (int n = 3; n <= 8; ++n) {
    const Subspace want = orthonormal_basis(std::vector<Vector>{
        basis(power2(n), bits(alternating(n, '0'))), basis(power2(n), bits(alternating(n, '1')))});
    ground_equals(c, "OBC n=" + std::to_string(n), a, 2, n, Boundary::Open, want, 2);
  }
  for (int n : {4, 6, 8}) {
    const GroundSpaceResult g = ground_space(build(a, 2, n, Boundary::Periodic));
    c.expect(g.degeneracy == 2 && g.frustration_free,
             "PBC n=" + std::to_string(n) + ": degeneracy " + std::to_string(g.degeneracy) + " E0 " +
                 str(g.energy));
    c.expect(std::abs(g.energy) <= 1e-9, "PBC n=" + std::to_string(n) + ": E0 " + str(g.energy));
  }
  for (int n : {3, 5, 7}) {
    const GroundSpaceResult g = ground_space(build(a, 2, n, Boundary::Periodic));
    c.expect(g.energy > 1e-6, "PBC n=" + std::to_string(n) + ": E0 " + str(g.energy));
    c.expect(g.degeneracy == 2 * n,
             "PBC n=" + std::to_string(n) + ": lowest eigenspace " + std::to_string(g.degeneracy));
  }
}

// 6 -----------------------------------------------------------------------
void criterion_counterexample(Criterion& c) {
  const MpsTensor cc = tensors::counterexample_c();
  const MpsTensor d = tensors::counterexample_d();
  for (Side side : {Side::Left, Side::Right}) {
    for (int j = 1; j <= 5; ++j) {
      const StabilitySearch s = stability_witness(cc, j, side);
      c.expect(!s.found && s.residual() > 1e-3, std::string(to_string(side)) + " j=" +
                                                    std::to_string(j) + ": residual " +
                                                    str(s.residual()));
    }
  }
  for (int k = 2; k <= 5; ++k) {
    const IntersectionResult r = intersection_check(cc, k);
    const Subspace sd = physical_subspace(d, k + 1);
    c.expect(!r.holds, "k=" + std::to_string(k) + ": intersection holds");
    c.expect(same(r.lhs, sd), "k=" + std::to_string(k) + ": intersection dim " +
                                  std::to_string(r.lhs_dim) + " vs S_" + std::to_string(k + 1) +
                                  "(D) dim " + std::to_string(sd.dim()) + ", residual " +
                                  str(mutual(r.lhs, sd)));
  }
  const GeneralizedIntersectionResult g = generalized_intersection_check(cc, d, 3, 6);
  c.expect(g.holds_at_k && g.b_intersects_above, "generalized intersection (C, D, 3, 6) fails");
  for (int n = 5; n <= 7; ++n) {
    const GroundSpaceResult gs = ground_space(build(cc, 3, n, Boundary::Open));
    const Subspace sd = physical_subspace(d, n);
    c.expect(gs.frustration_free && gs.degeneracy == 4 && same(gs.space, sd),
             "n=" + std::to_string(n) + ": ground space dim " + std::to_string(gs.degeneracy) +
                 " vs S_n(D) dim " + std::to_string(sd.dim()));
  }
}

// 7 -----------------------------------------------------------------------
int max_sites(const MpsTensor& a) { return a.d() == 2 ? 8 : 6; }

void criterion_implications(Criterion& c, const std::vector<Named>& all, int& excluded) {
  for (const auto& [name, a] : all) {
    const int D = a.D();
    const int jmax = D * D + 1;
    if (const auto inj = injectivity_length(a, jmax)) {
      for (Side side : {Side::Left, Side::Right}) {
        c.expect(stability_witness(a, *inj, side).found,
                 name + ": injective at " + std::to_string(*inj) + " but no " + to_string(side) + " witness");
      }
    }
    int jmin = 0;
    for (Side side : {Side::Left, Side::Right}) {
      const auto len = stability_length(a, side, jmax);
      if (!len) continue;
      if (jmin == 0 || len->j < jmin) jmin = len->j;
      for (int extra = 1; extra <= 2; ++extra) {
        StabilityWitness w = len->witness;
        w.j += extra;
        c.expect(check_witness(a, w).valid,
                 name + ": " + to_string(side) + " witness at j=" + std::to_string(len->j) +
                     " fails at j+" + std::to_string(extra));
      }
      for (int k = len->j + 1; k <= 6 && k + 1 <= (a.d() == 2 ? 12 : 7); ++k) {
        c.expect(intersection_check(a, k).holds,
                 name + ": " + to_string(side) + "-stable at " + std::to_string(len->j) +
                     " but intersection fails at k=" + std::to_string(k));
      }
    }
    if (jmin == 0) continue;
    const int nmax = max_sites(a);
    for (int ell = jmin + 1; ell < nmax; ++ell) {
      if (physical_subspace(a, ell).dim() == checked_power(a.d(), ell, dense_cap())) continue;
      for (int n = ell + 1; n <= nmax; ++n) {
        for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
          const GroundSpaceResult g = ground_space(build(a, ell, n, b));
          if (b == Boundary::Periodic && periodic_subspace(a, n).is_zero()) {
            ++excluded;
            continue;
          }
          c.expect(g.degeneracy <= D * D,
                   name + ": " + to_string(b) + " ell=" + std::to_string(ell) + " n=" +
                       std::to_string(n) + " degeneracy " + std::to_string(g.degeneracy));
        }
      }
      break;  // the smallest proper interaction length above the stability length
    }
  }
}

// 8 -----------------------------------------------------------------------
void criterion_pushing(Criterion& c, const std::vector<Named>& all) {
  std::mt19937_64 rng(8);
  for (const auto& [name, a] : all) {
    for (Side side : {Side::Left, Side::Right}) {
      const auto len = stability_length(a, side, a.D() * a.D() + 1);
      if (!len) continue;
      PushingOperator op;
      try {
        op = pushing_operator(a, len->witness);
      } catch (const std::exception& e) {
        c.fail(name + " " + to_string(side) + ": " + e.what());
        continue;
      }
      const double fp = fixed_point_residual(a, op);
      c.expect(fp <= 1e-9, name + " " + to_string(side) + ": fixed-point residual " + str(fp));
      for (int t = 0; t < 20; ++t) {
        const Matrix m = random_matrix(rng, a.D(), a.D());
        const double r = transfer_residual(a, op, len->witness, m);
        c.expect(r <= 1e-9, name + " " + to_string(side) + ": transfer residual " + str(r));
      }
    }
  }
}

// 9 -----------------------------------------------------------------------
void criterion_inclusions(Criterion& c, const std::vector<Named>& gallery) {
  for (const auto& [name, a] : gallery) {
    const Subspace site = Subspace::full(a.d());
    std::vector<Subspace> s(9);
    for (int n = 1; n <= 8; ++n) s[static_cast<std::size_t>(n)] = physical_subspace(a, n);
    for (int k = 1; k <= 7; ++k) {
      for (int l = 1; k + l <= 8; ++l) {
        const double r = containment_residual(
            tensor_product(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(l)]),
            s[static_cast<std::size_t>(k + l)]);
        c.expect(r <= 1e-9, name + ": split k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                " residual " + str(r));
      }
      const Subspace both = intersect(tensor_product(s[static_cast<std::size_t>(k)], site),
                                      tensor_product(site, s[static_cast<std::size_t>(k)]));
      const double r = containment_residual(both, s[static_cast<std::size_t>(k + 1)]);
      c.expect(r <= 1e-9, name + ": one-way k=" + std::to_string(k) + " residual " + str(r));
    }
  }
}

// 10 ----------------------------------------------------------------------
struct Outcomes {
  std::optional<int> injectivity;
  bool nilpotent = false;
  std::optional<int> left, right;
  std::vector<bool> intersection;
  bool operator==(const Outcomes&) const = default;
};

Outcomes outcomes(const MpsTensor& a) {
  const int jmax = std::min(a.D() * a.D() + 1, 6);
  Outcomes o;
  o.injectivity = injectivity_length(a, jmax);
  o.nilpotent = is_nilpotent(a);
  if (const auto l = stability_length(a, Side::Left, jmax)) o.left = l->j;
  if (const auto r = stability_length(a, Side::Right, jmax)) o.right = r->j;
  for (int k = 1; k <= (a.d() == 2 ? 6 : 4); ++k) o.intersection.push_back(intersection_check(a, k).holds);
  return o;
}

std::string show(const Outcomes& o) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::string s = "inj " + opt(o.injectivity) + " nil " + std::to_string(o.nilpotent) + " L " +
                  opt(o.left) + " R " + opt(o.right) + " int ";
  for (bool b : o.intersection) s += b ? '1' : '0';
  return s;
}

void gauge_one(Criterion& c, std::mt19937_64& rng, const std::string& name, const MpsTensor& a);

void criterion_gauge(Criterion& c, std::vector<Named> all) {
  std::vector<Matrix> nil_mats;
  Matrix shift = Matrix::Zero(3, 3);
  shift(0, 1) = shift(1, 2) = 1.0;
  const MpsTensor w = tensors::w_state();
  for (const Matrix& m : w.matrices()) nil_mats.push_back(kron(m, shift));
  all.push_back({"w_state x shift", MpsTensor(nil_mats)});
  std::mt19937_64 rng(10);
  for (const auto& [name, a] : all) {
    try {
      gauge_one(c, rng, name, a);
    } catch (const std::exception& e) {
      c.fail(name + ": exception " + e.what());
    }
  }
}

void gauge_one(Criterion& c, std::mt19937_64& rng, const std::string& name, const MpsTensor& a) {
  {
    const Outcomes base = outcomes(a);
    for (int t = 0; t < 20; ++t) {
      const Outcomes got = outcomes(conjugate(a, random_gauge(rng, a.D())));
      c.expect(got == base, name + ": " + show(base) + " became " + show(got));
    }
    const MpsTensor at = transpose_tensor(a);
    for (Side side : {Side::Left, Side::Right}) {
      const Side other = side == Side::Left ? Side::Right : Side::Left;
      const auto len = stability_length(a, side, std::min(a.D() * a.D() + 1, 6));
      const auto dual = stability_length(at, other, std::min(a.D() * a.D() + 1, 6));
      c.expect(len.has_value() == dual.has_value() && (!len || len->j == dual->j),
               name + ": " + to_string(side) + " stability differs from the transpose");
      if (!len) continue;
      StabilityWitness w = len->witness;
      w.side = other;
      w.j = len->j;
      for (Matrix& y : w.Y) y.transposeInPlace();
      c.expect(check_witness(at, w).valid, name + ": transposed " + to_string(side) + " witness invalid");
    }
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Named> gallery = gallery_tensors();
  std::vector<Named> all = random_ensemble();
  all.insert(all.end(), gallery.begin(), gallery.end());

  int excluded = 0;
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"W state ground spaces, witness and local term", criterion_w},
      {"Dicke D=3,4 stability length and ground spaces", criterion_dicke},
      {"W with momentum ground spaces and local term", criterion_momentum},
      {"domain wall witness, intersection, ground spaces, local term", criterion_domain_wall},
      {"antiferromagnetic Ising ground spaces", criterion_afm},
      {"direct-sum counterexample", criterion_counterexample},
      {"stability implications on random and gallery tensors",
       [&](Criterion& c) { criterion_implications(c, all, excluded); }},
      {"pushing operator identities", [&](Criterion& c) { criterion_pushing(c, all); }},
      {"split and one-way inclusions", [&](Criterion& c) { criterion_inclusions(c, gallery); }},
      {"gauge and transpose invariance", [&](Criterion& c) { criterion_gauge(c, all); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!c.ok()) {
      std::cout << "  [" << c.summary() << "]";
      ++failed;
    }
    if (i == 6) std::cout << "  (" << excluded << " periodic sizes with empty S_n^P not bounded)";
    std::cout << "\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed in " << str(seconds) << " s\n";
  return failed == 0 ? 0 : 1;
}
