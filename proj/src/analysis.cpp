#include "mpsstab/analysis.hpp"

#include <cmath>

namespace mpsstab {

namespace {

constexpr const char* kSchema = "report_v1";

bool fits(int d, int sites, std::size_t cap) {
  return std::pow(static_cast<double>(d), sites) <= static_cast<double>(cap);
}

std::optional<StabilitySummary> summarize(const std::optional<StabilityLength>& s) {
  if (!s) return std::nullopt;
  return StabilitySummary{s->j, s->witness.residual_invariance, s->witness.residual_identity};
}

bool proper(const MpsTensor& a, int ell, const Tolerance& tol) {
  const Subspace s = physical_subspace(a, ell, tol);
  return s.dim() < s.ambient_dim();
}

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw ParseError(pointer + ": " + what, 0, 0, pointer);
}

const Json& field(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) schema_error(pointer.empty() ? "/" : pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(pointer + "/" + key, "missing");
  return *it;
}

template <class T>
T get(const Json& j, const char* key, const std::string& pointer) {
  const Json& v = field(j, key, pointer);
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    schema_error(pointer + "/" + key, "wrong type");
  }
}

Json stability_json(const std::optional<StabilitySummary>& s) {
  if (!s) return nullptr;
  return Json{{"j", s->j},
              {"residual_invariance", s->residual_invariance},
              {"residual_identity", s->residual_identity}};
}

std::optional<StabilitySummary> stability_from(const Json& j, const std::string& p) {
  if (j.is_null()) return std::nullopt;
  return StabilitySummary{get<int>(j, "j", p), get<double>(j, "residual_invariance", p),
                          get<double>(j, "residual_identity", p)};
}

}  // namespace

const char* tool_version() { return MPSSTAB_VERSION; }

AnalysisReport analyze(const MpsTensor& a, const AnalysisOptions& opts) {
  const Tolerance& tol = opts.tol;
  tol.validate();
  AnalysisReport r;
  r.d = a.d();
  r.D = a.D();
  r.hash = content_hash(a);
  r.tool_version = tool_version();
  r.tol_rank = tol.rank_rel;
  r.tol_zero = tol.eig_zero;
  r.jmax = opts.jmax.value_or(a.D() * a.D() + 1);
  if (r.jmax < 1) throw ContractViolation("jmax must be at least 1");
  if (opts.kmin < 1) throw ContractViolation("kmin must be at least 1");
  if (opts.kmax) checked_power(a.d(), *opts.kmax + 1, dense_cap());
  if (opts.nmax) checked_power(a.d(), *opts.nmax, hamiltonian_cap());

  r.injectivity = injectivity_length(a, r.jmax, tol);
  r.nilpotent = is_nilpotent(a, tol);
  const auto left = stability_length(a, Side::Left, r.jmax, tol);
  const auto right = stability_length(a, Side::Right, r.jmax, tol);
  r.stability_left = summarize(left);
  r.stability_right = summarize(right);

  int kmax = opts.kmax.value_or(6);
  if (!opts.kmax) {
    while (kmax >= opts.kmin && !fits(a.d(), kmax + 1, dense_cap())) --kmax;
  }
  for (int k = opts.kmin; k <= kmax; ++k) {
    const IntersectionResult x = intersection_check(a, k, tol);
    r.intersection.push_back({k, x.holds, x.lhs_dim, x.rhs_dim});
  }

  int nmax = opts.nmax.value_or(8);
  if (!opts.nmax) {
    while (nmax >= 1 && !fits(a.d(), nmax, hamiltonian_cap())) --nmax;
  }
  int ell = 2;
  if (opts.ell) {
    ell = *opts.ell;
  } else {
    int j = 0;
    if (left) j = left->j;
    if (right && (j == 0 || right->j < j)) j = right->j;
    ell = j > 0 ? j + 1 : 2;
    // A full S_ℓ has no parent Hamiltonian; move to the first proper length.
    while (ell < nmax && fits(a.d(), ell, dense_cap()) && !proper(a, ell, tol)) ++ell;
  }
  if (ell < 1) throw ContractViolation("ell must be at least 1");
  if (r.nilpotent && !opts.ell) return r;
  for (int n = ell + 1; n <= nmax; ++n) {
    for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
      const GroundComparison g = verify_ground_equals_mps(a, ell, n, b, tol);
      r.ground_spaces.push_back({b, ell, n, g.ground.energy, g.ground.degeneracy,
                                 g.ground.frustration_free, g.equal});
    }
  }
  return r;
}

Json report_to_json(const AnalysisReport& r) {
  Json inter = Json::array();
  for (const auto& x : r.intersection) {
    inter.push_back({{"k", x.k}, {"holds", x.holds}, {"lhs_dim", x.lhs_dim}, {"rhs_dim", x.rhs_dim}});
  }
  Json gs = Json::array();
  for (const auto& g : r.ground_spaces) {
    gs.push_back({{"boundary", to_string(g.boundary)},
                  {"ell", g.ell},
                  {"n", g.n},
                  {"E0", g.energy},
                  {"degeneracy", g.degeneracy},
                  {"frustration_free", g.frustration_free},
                  {"equals_mps", g.equals_mps}});
  }
  Json j;
  j["version"] = kSchema;
  j["tool_version"] = r.tool_version;
  j["tensor_digest"] = {{"d", r.d}, {"D", r.D}, {"hash", r.hash}};
  j["tolerances"] = {{"rank", r.tol_rank}, {"zero", r.tol_zero}};
  j["jmax"] = r.jmax;
  j["injectivity"] = r.injectivity ? Json(*r.injectivity) : Json(nullptr);
  j["nilpotent"] = r.nilpotent;
  j["stability"] = {{"left", stability_json(r.stability_left)},
                    {"right", stability_json(r.stability_right)}};
  j["intersection"] = std::move(inter);
  j["ground_spaces"] = std::move(gs);
  return j;
}

AnalysisReport report_from_json(const Json& j) {
  if (get<std::string>(j, "version", "") != kSchema) schema_error("/version", "expected report_v1");
  AnalysisReport r;
  r.tool_version = get<std::string>(j, "tool_version", "");
  const Json& digest = field(j, "tensor_digest", "");
  r.d = get<int>(digest, "d", "/tensor_digest");
  r.D = get<int>(digest, "D", "/tensor_digest");
  r.hash = get<std::string>(digest, "hash", "/tensor_digest");
  const Json& tol = field(j, "tolerances", "");
  r.tol_rank = get<double>(tol, "rank", "/tolerances");
  r.tol_zero = get<double>(tol, "zero", "/tolerances");
  r.jmax = get<int>(j, "jmax", "");
  const Json& inj = field(j, "injectivity", "");
  if (!inj.is_null()) r.injectivity = get<int>(j, "injectivity", "");
  r.nilpotent = get<bool>(j, "nilpotent", "");
  const Json& st = field(j, "stability", "");
  r.stability_left = stability_from(field(st, "left", "/stability"), "/stability/left");
  r.stability_right = stability_from(field(st, "right", "/stability"), "/stability/right");
  const Json& inter = field(j, "intersection", "");
  if (!inter.is_array()) schema_error("/intersection", "expected an array");
  for (std::size_t i = 0; i < inter.size(); ++i) {
    const std::string p = "/intersection/" + std::to_string(i);
    r.intersection.push_back({get<int>(inter[i], "k", p), get<bool>(inter[i], "holds", p),
                              get<int>(inter[i], "lhs_dim", p), get<int>(inter[i], "rhs_dim", p)});
  }
  const Json& gs = field(j, "ground_spaces", "");
  if (!gs.is_array()) schema_error("/ground_spaces", "expected an array");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string p = "/ground_spaces/" + std::to_string(i);
    GroundSummary g;
    try {
      g.boundary = boundary_from_string(get<std::string>(gs[i], "boundary", p));
    } catch (const std::invalid_argument& e) {
      schema_error(p + "/boundary", e.what());
    }
    g.ell = get<int>(gs[i], "ell", p);
    g.n = get<int>(gs[i], "n", p);
    g.energy = get<double>(gs[i], "E0", p);
    g.degeneracy = get<int>(gs[i], "degeneracy", p);
    g.frustration_free = get<bool>(gs[i], "frustration_free", p);
    g.equals_mps = get<bool>(gs[i], "equals_mps", p);
    r.ground_spaces.push_back(g);
  }
  return r;
}

}  // namespace mpsstab
