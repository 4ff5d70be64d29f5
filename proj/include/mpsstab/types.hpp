#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpsstab {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Arguments whose shapes do not agree.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition on the values (not the shapes) was violated.
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A dense object would exceed the configured size cap.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// A solver failed, or a construction that must succeed did not meet its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The physical subspace fills the whole space, so no parent Hamiltonian exists.
class NotProperSubspace : public ContractViolation {
 public:
  explicit NotProperSubspace(const std::string& what) : ContractViolation(what) {}
};

}  // namespace mpsstab
