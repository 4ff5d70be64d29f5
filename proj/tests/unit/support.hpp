#pragma once

#include <random>
#include <vector>

#include "mpsstab/mps.hpp"

namespace testing {

using namespace mpsstab;

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      m(r, c) = Scalar(re, g(rng));
    }
  }
  return m;
}

inline MpsTensor random_tensor(std::mt19937_64& rng, int d, int D) {
  std::vector<Matrix> m;
  for (int i = 0; i < d; ++i) m.push_back(random_matrix(rng, D, D));
  return MpsTensor(std::move(m));
}

/// Random subspace of the given dimension, built from Gaussian columns.
inline Subspace random_subspace(std::mt19937_64& rng, Eigen::Index ambient, Eigen::Index dim) {
  if (dim == 0) return Subspace::zero(ambient);
  return orthonormal_basis(random_matrix(rng, ambient, dim));
}

/// Independent intersection oracle: null space of the stacked complement projectors.
inline Eigen::Index intersection_dim_oracle(const Subspace& s1, const Subspace& s2) {
  const Eigen::Index n = s1.ambient_dim();
  const Matrix i = Matrix::Identity(n, n);
  Matrix stacked(2 * n, n);
  stacked << i - s1.projector(), i - s2.projector();
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& s = svd.singularValues();
  Eigen::Index zero = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) < 1e-8) ++zero;
  }
  return zero;
}

inline Vector basis_state(Eigen::Index dim, Eigen::Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

/// Well-conditioned random gauge: identity plus a scaled Gaussian perturbation.
inline Matrix random_gauge(std::mt19937_64& rng, int D, double max_condition = 20.0) {
  for (;;) {
    Matrix t = Matrix::Identity(D, D) + 0.4 * random_matrix(rng, D, D);
    Eigen::JacobiSVD<Matrix> svd(t);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) <= max_condition) return t;
  }
}

}  // namespace testing
