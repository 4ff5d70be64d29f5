#include <doctest.h>

#include <algorithm>
#include <set>

#include "mpsstab/gallery.hpp"
#include "support.hpp"

using namespace mpsstab;

namespace {

MpsTensor scalar_tensor(std::vector<double> amplitudes) {
  std::vector<Matrix> m;
  for (double a : amplitudes) m.push_back(Matrix::Constant(1, 1, a));
  return MpsTensor(std::move(m));
}

/// A D×D random tensor on d = 4 that only uses physical indices `first` and `first + 1`.
MpsTensor random_on_pair(std::mt19937_64& rng, int D, int first) {
  std::vector<Matrix> m(4, Matrix::Zero(D, D));
  m[static_cast<std::size_t>(first)] = testing::random_matrix(rng, D, D);
  m[static_cast<std::size_t>(first + 1)] = testing::random_matrix(rng, D, D);
  return MpsTensor(std::move(m));
}

int count(const std::vector<CheckRecord>& records, Status s) {
  return static_cast<int>(std::count_if(records.begin(), records.end(),
                                        [&](const CheckRecord& r) { return r.status == s; }));
}

}  // namespace

TEST_CASE("every gallery expectation holds up to seven sites") {
  const std::vector<CheckRecord> records = run_all(7);
  CHECK(records.size() > 200);
  for (const CheckRecord& r : records) {
    CHECK_MESSAGE(r.status != Status::Fail, r.entry << ": " << r.check << " " << r.detail);
  }
  CHECK(count(records, Status::Pass) > 200);
}

TEST_CASE("records are grouped by entry name") {
  const std::vector<CheckRecord> records = run_all(4);
  CHECK(std::is_sorted(records.begin(), records.end(),
                       [](const CheckRecord& a, const CheckRecord& b) { return a.entry < b.entry; }));
  std::set<std::string> seen;
  for (const CheckRecord& r : records) seen.insert(r.entry);
  const std::vector<std::string> names = builtin_names();
  CHECK(seen == std::set<std::string>(names.begin(), names.end()));
}

TEST_CASE("a small site budget skips instead of failing") {
  const std::vector<CheckRecord> records = run_all(3);
  CHECK(count(records, Status::Skip) > 0);
  CHECK(count(records, Status::Fail) == 0);
}

TEST_CASE("a perturbed W tensor fails its expectations without stopping the run") {
  GalleryEntry e = builtin("w_state");
  Matrix a1 = e.tensor[1];
  a1(1, 0) = 0.1;
  e.tensor = MpsTensor({e.tensor[0], a1});
  const std::vector<CheckRecord> records = run_entries({e}, 6);
  CHECK(records.size() == e.expectations.size());
  CHECK(count(records, Status::Fail) > 0);
  CHECK(count(records, Status::Pass) + count(records, Status::Fail) + count(records, Status::Skip) ==
        static_cast<int>(records.size()));
}

TEST_CASE("builtin names") {
  const std::vector<std::string> names = builtin_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* want : {"w_state", "dicke_3", "dicke_4", "domain_wall", "afm_ising", "ghz",
                           "aklt", "counterexample_c", "counterexample_d", "gen_w", "gen_dw"}) {
    CHECK_MESSAGE(std::find(names.begin(), names.end(), want) != names.end(), want);
  }
  CHECK(builtin("aklt").tensor.d() == 3);
  CHECK_THROWS_AS(builtin("no_such_entry"), ContractViolation);
  for (const GalleryEntry& e : builtin_entries()) {
    CHECK_FALSE(e.description.empty());
    for (const Expectation& x : e.expectations) CHECK_FALSE(x.note.empty());
  }
}

TEST_CASE("tensor constructors") {
  const MpsTensor c = tensors::counterexample_c();
  CHECK(c.D() == 4);
  const MpsTensor a = tensors::counterexample_a();
  CHECK((c[0].topLeftCorner(2, 2) - a[0]).norm() == 0.0);
  CHECK((c[0].bottomRightCorner(2, 2) - a[0].transpose()).norm() == 0.0);
  CHECK(c[0].topRightCorner(2, 2).norm() == 0.0);

  const MpsTensor gw = tensors::gen_w(tensors::w_state(), tensors::ghz());
  CHECK(gw.D() == 4);
  CHECK((gw[1].topRightCorner(2, 2) - tensors::ghz()[1]).norm() == 0.0);
  CHECK((gw[1].bottomRightCorner(2, 2) - tensors::w_state()[1]).norm() == 0.0);

  const MpsTensor e = tensors::embed_physical(tensors::w_state(), 3);
  CHECK(e.d() == 3);
  CHECK(e[2].norm() == 0.0);
  CHECK_THROWS_AS(tensors::embed_physical(tensors::aklt(), 2), ContractViolation);

  const MpsTensor s = tensors::single_index(Matrix::Identity(2, 2), 1, 3);
  CHECK(s[0].norm() == 0.0);
  CHECK(s[1] == Matrix::Identity(2, 2));

  double norm = 0.0;
  const MpsTensor k = tensors::aklt();
  Matrix sum = Matrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) sum += k[i] * k[i].adjoint();
  norm = (sum - Matrix::Identity(2, 2)).norm();
  CHECK(norm < 1e-12);
}

TEST_CASE("generalized W physical spaces add one moving excitation") {
  std::mt19937_64 rng(51);
  const MpsTensor a = testing::random_tensor(rng, 2, 2);
  const MpsTensor b = testing::random_tensor(rng, 2, 2);
  const MpsTensor c = tensors::gen_w(a, b);
  for (int n = 2; n <= 5; ++n) {
    std::vector<Vector> moving;
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        Vector acc = Vector::Zero(Eigen::Index{1} << n);
        for (int at = 0; at < n; ++at) {
          std::vector<MpsTensor> sites(static_cast<std::size_t>(n), a);
          sites[static_cast<std::size_t>(at)] = b;
          acc += mps_state_sites(unit_matrix(2, mu, nu), sites).amplitudes;
        }
        moving.push_back(acc);
      }
    }
    const Subspace want = sum(physical_subspace(a, n), orthonormal_basis(moving));
    CHECK(same_subspace(physical_subspace(c, n), want));
  }
}

TEST_CASE("domain wall from two product states") {
  const MpsTensor zero = scalar_tensor({1.0, 0.0});
  const MpsTensor one = scalar_tensor({0.0, 1.0});
  const GenDwReport r = gen_dw_property_test(zero, one, 6, 6);
  CHECK(r.status == Status::Pass);
  CHECK(r.j_a == 1);
  CHECK(r.j_b == 1);
  const MpsTensor c = tensors::gen_dw(zero, one);
  CHECK(physical_subspace(c, 4).dim() == 3);
  const GroundComparison g = verify_ground_equals_mps(c, 3, 5, Boundary::Open);
  CHECK(g.equal);
  CHECK(g.gs_dim == 3);
}

TEST_CASE("generalized domain wall skips overlapping single-site spaces") {
  const MpsTensor w = tensors::w_state();
  const GenDwReport r = gen_dw_property_test(w, w, 5, 5);
  CHECK(r.status == Status::Skip);
  CHECK_FALSE(r.reason.empty());
  CHECK_THROWS_AS(gen_dw_property_test(w, tensors::aklt(), 4, 4), DimensionMismatch);
  CHECK_THROWS_AS(gen_dw_property_test(w, scalar_tensor({1.0, 0.0}), 4, 4), DimensionMismatch);
}

TEST_CASE("generalized domain wall skips tensors without witnesses") {
  const GenDwReport r = gen_dw_property_test(tensors::counterexample_c(), tensors::counterexample_c(), 4, 4);
  CHECK(r.status == Status::Skip);
}

TEST_CASE("generalized domain wall from random tensors on disjoint physical pairs") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 2; ++trial) {
    const MpsTensor a = random_on_pair(rng, 2, 0);
    const MpsTensor b = random_on_pair(rng, 2, 2);
    const GenDwReport r = gen_dw_property_test(a, b, 5, 5);
    CHECK_MESSAGE(r.status == Status::Pass, r.reason);
  }
}

TEST_CASE("status names and descriptions") {
  CHECK(std::string(to_string(Status::Pass)) == "pass");
  CHECK(std::string(to_string(Status::Skip)) == "skip");
  CHECK(sites_required(expect::Check{expect::SubspaceDim{false, 5, 1}}) == 5);
  CHECK_FALSE(describe(expect::Check{expect::Intersection{3, true, {}, {}}}).empty());
}
