#include <doctest.h>

#include "mpsstab/linalg.hpp"
#include "support.hpp"

using namespace mpsstab;
using testing::basis_state;

namespace {

Subspace span(std::vector<Vector> v) { return orthonormal_basis(v); }

}  // namespace

TEST_CASE("orthonormal_basis keeps independent vectors") {
  const Subspace s = span({basis_state(2, 0), basis_state(2, 1)});
  CHECK(s.dim() == 2);
  CHECK(s.ambient_dim() == 2);
}

TEST_CASE("orthonormal_basis collapses collinear vectors") {
  Vector v(2);
  v << 2.0, 0.0;
  const Subspace s = span({basis_state(2, 0), v});
  REQUIRE(s.dim() == 1);
  CHECK(std::abs(std::abs(s.vector(0)(0)) - 1.0) < 1e-12);
}

TEST_CASE("orthonormal_basis drops a perturbation below the rank cutoff") {
  std::mt19937_64 rng(11);
  const Matrix q = orthonormal_basis(testing::random_matrix(rng, 8, 2)).basis();
  const Vector v = q.col(0);
  const Vector w = q.col(1);
  Matrix stack(8, 2);
  stack << v, v + 1e-14 * w;
  Eigen::JacobiSVD<Matrix> svd(stack);
  REQUIRE(svd.singularValues()(1) < 1e-10 * svd.singularValues()(0));
  CHECK(orthonormal_basis(stack).dim() == 1);
}

TEST_CASE("orthonormal_basis of zero vectors is the zero subspace") {
  const Subspace s = orthonormal_basis(Matrix::Zero(4, 3));
  CHECK(s.is_zero());
  CHECK(s.basis().cols() == 0);
}

TEST_CASE("orthonormal_basis rejects mixed lengths") {
  CHECK_THROWS_AS(span({basis_state(2, 0), basis_state(3, 0)}), DimensionMismatch);
}

TEST_CASE("intersect of coordinate planes") {
  const Subspace a = span({basis_state(3, 0), basis_state(3, 1)});
  const Subspace b = span({basis_state(3, 1), basis_state(3, 2)});
  const Subspace i = intersect(a, b);
  REQUIRE(i.dim() == 1);
  CHECK(same_subspace(i, span({basis_state(3, 1)})));
  CHECK(same_subspace(intersect(a, a), a));
  CHECK((intersect(a, a).projector() - a.projector()).norm() < 1e-12);
}

TEST_CASE("intersect matches the stacked-complement oracle on random pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int common = pick(rng) % 4;
    const int e1 = pick(rng);
    const int e2 = pick(rng);
    const Matrix c = testing::random_matrix(rng, 16, common);
    Matrix b1(16, common + e1), b2(16, common + e2);
    b1 << c, testing::random_matrix(rng, 16, e1);
    b2 << c, testing::random_matrix(rng, 16, e2);
    const Subspace s1 = orthonormal_basis(b1);
    const Subspace s2 = orthonormal_basis(b2);
    const Subspace i = intersect(s1, s2);
    CHECK(i.dim() == testing::intersection_dim_oracle(s1, s2));
    CHECK(contains(s1, i));
    CHECK(contains(s2, i));
  }
}

TEST_CASE("intersect and sum reject different ambients") {
  CHECK_THROWS_AS(intersect(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
  CHECK_THROWS_AS(sum(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
  CHECK_THROWS_AS(contains(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST_CASE("sum of coordinate lines and with zero") {
  const Subspace a = span({basis_state(3, 0)});
  const Subspace b = span({basis_state(3, 1)});
  CHECK(same_subspace(sum(a, b), span({basis_state(3, 0), basis_state(3, 1)})));
  CHECK(same_subspace(sum(a, Subspace::zero(3)), a));
}

TEST_CASE("rank identity dim(S1+S2) + dim(S1∩S2) = dim S1 + dim S2") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const int common = pick(rng) % 4;
    const Matrix c = testing::random_matrix(rng, 16, common);
    const int e1 = pick(rng), e2 = pick(rng);
    Matrix b1(16, common + e1), b2(16, common + e2);
    b1 << c, testing::random_matrix(rng, 16, e1);
    b2 << c, testing::random_matrix(rng, 16, e2);
    const Subspace s1 = orthonormal_basis(b1), s2 = orthonormal_basis(b2);
    CHECK(sum(s1, s2).dim() + intersect(s1, s2).dim() == s1.dim() + s2.dim());
    CHECK(contains(sum(s1, s2), s1));
    CHECK(contains(s1, intersect(s1, s2)));
  }
}

TEST_CASE("contains on trivial cases") {
  const Subspace s = span({basis_state(3, 0), basis_state(3, 2)});
  CHECK(contains(s, Subspace::zero(3)));
  CHECK(contains(s, s));
  CHECK_FALSE(contains(span({basis_state(3, 1)}), span({basis_state(3, 0)})));
}

TEST_CASE("orthonormal_basis is idempotent") {
  std::mt19937_64 rng(3);
  const Subspace s = testing::random_subspace(rng, 10, 4);
  const Subspace t = orthonormal_basis(s.basis());
  CHECK(same_subspace(s, t));
  CHECK((s.basis().adjoint() * s.basis() - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("kernel of a projector is the complement of its range") {
  std::mt19937_64 rng(5);
  const Subspace s = testing::random_subspace(rng, 6, 2);
  const Subspace k = kernel(s.projector());
  CHECK(k.dim() == 4);
  CHECK((s.basis().adjoint() * k.basis()).norm() < 1e-10);
}

TEST_CASE("kernel of identity is zero and of zero is everything") {
  CHECK(kernel(Matrix::Identity(3, 3)).is_zero());
  CHECK(kernel(Matrix::Zero(3, 3)).dim() == 3);
}

TEST_CASE("kernel of the two-site W local term is spanned by |00> and |01>+|10>") {
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = 0.5;
  h(1, 2) = -0.5;
  h(2, 1) = -0.5;
  h(2, 2) = 0.5;
  h(3, 3) = 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Subspace k = kernel(h);
  CHECK(k.dim() == 2);
  Vector w(4);
  w << 1.0, 1.0, 1.0, 0.0;  // |00> + |01> + |10>
  CHECK(k.reject(w).norm() < 1e-12);
  CHECK(k.reject(testing::basis_state(4, 3)).norm() > 0.99);
  CHECK(k.reject(testing::basis_state(4, 1) - testing::basis_state(4, 2)).norm() > 0.99);
  CHECK(eig.eigenvalues().head(2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel vectors are annihilated") {
  std::mt19937_64 rng(9);
  const Matrix b = testing::random_matrix(rng, 8, 5);
  const Matrix m = b * b.adjoint();
  const Subspace k = kernel(m);
  CHECK(k.dim() == 3);
  const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().maxCoeff();
  for (Eigen::Index i = 0; i < k.dim(); ++i) CHECK((m * k.vector(i)).norm() <= 10 * 1e-9 * norm);
}

TEST_CASE("kernel rejects non-Hermitian input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(kernel(m), ContractViolation);
  CHECK_THROWS_AS(lowest_eigenspace(m), ContractViolation);
}

TEST_CASE("lowest_eigenspace of diagonal matrices") {
  Matrix a = Matrix::Zero(3, 3);
  a(2, 2) = 1.0;
  const auto la = lowest_eigenspace(a);
  CHECK(la.energy == doctest::Approx(0.0));
  CHECK(la.space.dim() == 2);
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 2.0;
  b(1, 1) = 3.0;
  const auto lb = lowest_eigenspace(b);
  CHECK(lb.energy == doctest::Approx(2.0));
  CHECK(lb.space.dim() == 1);
}

TEST_CASE("least_squares_min_norm picks the minimal solution") {
  Matrix a(1, 2);
  a << 1.0, 1.0;
  Matrix b(1, 1);
  b << 2.0;
  const Matrix x = least_squares_min_norm(a, b);
  CHECK(std::abs(x(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(x(1, 0) - 1.0) < 1e-12);
}

TEST_CASE("vec and unvec are inverse and column-major") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vec(m);
  CHECK(v(1) == Scalar(3.0));
  CHECK(unvec(v, 2) == m);
  CHECK_THROWS_AS(unvec(v, 3), DimensionMismatch);
}

TEST_CASE("tensor_product is big-endian") {
  const Subspace a = span({basis_state(2, 1)});
  const Subspace b = span({basis_state(3, 2)});
  const Subspace t = tensor_product(a, b);
  REQUIRE(t.dim() == 1);
  CHECK(std::abs(std::abs(t.vector(0)(1 * 3 + 2)) - 1.0) < 1e-12);
}

TEST_CASE("Tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-9}.validate()), ContractViolation);
  CHECK_THROWS_AS((Tolerance{1.5, 1e-9}.validate()), ContractViolation);
  CHECK_THROWS_AS((Tolerance{1e-10, -1.0}.validate()), ContractViolation);
}
