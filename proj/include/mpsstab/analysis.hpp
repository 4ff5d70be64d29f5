#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpsstab/hamiltonian.hpp"
#include "mpsstab/io.hpp"

namespace mpsstab {

/// Ranges and tolerances for a full analysis. Unset optionals take defaults
/// derived from the tensor; defaulted ranges are clipped to the dense caps,
/// explicit ones are not.
struct AnalysisOptions {
  Tolerance tol;
  std::optional<int> jmax;  // default D²+1
  int kmin = 2;
  std::optional<int> kmax;  // default 6
  std::optional<int> nmax;  // default 8
  std::optional<int> ell;   // default stability length + 1, else 2
};

struct StabilitySummary {
  int j = 0;
  double residual_invariance = 0.0;
  double residual_identity = 0.0;
  bool operator==(const StabilitySummary&) const = default;
};

struct IntersectionSummary {
  int k = 0;
  bool holds = false;
  int lhs_dim = 0;
  int rhs_dim = 0;
  bool operator==(const IntersectionSummary&) const = default;
};

struct GroundSummary {
  Boundary boundary = Boundary::Open;
  int ell = 0;
  int n = 0;
  double energy = 0.0;
  int degeneracy = 0;
  bool frustration_free = false;
  bool equals_mps = false;
  bool operator==(const GroundSummary&) const = default;
};

struct AnalysisReport {
  int d = 0;
  int D = 0;
  std::string hash;
  int jmax = 0;
  std::optional<int> injectivity;
  bool nilpotent = false;
  std::optional<StabilitySummary> stability_left;
  std::optional<StabilitySummary> stability_right;
  std::vector<IntersectionSummary> intersection;
  std::vector<GroundSummary> ground_spaces;
  std::string tool_version;
  double tol_rank = 0.0;
  double tol_zero = 0.0;
  bool operator==(const AnalysisReport&) const = default;
};

const char* tool_version();

AnalysisReport analyze(const MpsTensor& a, const AnalysisOptions& opts = {});

Json report_to_json(const AnalysisReport& r);
/// Inverse of report_to_json; throws ParseError on schema violations.
AnalysisReport report_from_json(const Json& j);

}  // namespace mpsstab
