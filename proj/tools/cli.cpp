#include "cli.hpp"

#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "mpsstab/analysis.hpp"
#include "mpsstab/gallery.hpp"

namespace mpsstab::cli {

namespace {

struct Common {
  double tol_rank = Tolerance{}.rank_rel;
  double tol_zero = Tolerance{}.eig_zero;

  Tolerance tolerance() const {
    Tolerance t{tol_rank, tol_zero};
    t.validate();
    return t;
  }
};

void add_tolerances(CLI::App* sub, Common& c) {
  sub->add_option("--tol-rank", c.tol_rank, "relative singular-value cutoff");
  sub->add_option("--tol-zero", c.tol_zero, "zero-eigenvalue threshold");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string optional_cell(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

MpsTensor random_tensor(std::uint64_t seed, std::uint64_t index, int d, int D,
                        const std::string& dist) {
  if (d < 1 || D < 1) throw ContractViolation("scan: d and D must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<Matrix> m(static_cast<std::size_t>(d), Matrix(D, D));
  if (dist == "gaussian") {
    // Standard complex Gaussian: E|z|² = 1.
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    for (auto& x : m) {
      for (Eigen::Index c = 0; c < D; ++c) {
        for (Eigen::Index r = 0; r < D; ++r) {
          const double re = g(rng);
          x(r, c) = Scalar(re, g(rng));
        }
      }
    }
  } else if (dist == "real") {
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& x : m) {
      for (Eigen::Index c = 0; c < D; ++c) {
        for (Eigen::Index r = 0; r < D; ++r) x(r, c) = g(rng);
      }
    }
  } else {
    throw ContractViolation("unknown distribution '" + dist + "' (expected gaussian or real)");
  }
  return MpsTensor(std::move(m));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability certificates and parent Hamiltonians for matrix product states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));
  Common common;

  // analyze
  std::string a_path, a_out;
  std::optional<int> a_jmax, a_kmax, a_nmax, a_ell;
  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report as JSON");
  analyze_cmd->add_option("tensor", a_path, "tensor JSON file")->required();
  analyze_cmd->add_option("--out", a_out, "write the report here instead of stdout");
  analyze_cmd->add_option("--jmax", a_jmax, "largest stability length searched (default D²+1)");
  analyze_cmd->add_option("--kmax", a_kmax, "largest intersection length (default 6)");
  analyze_cmd->add_option("--nmax", a_nmax, "largest system size (default 8)");
  analyze_cmd->add_option("--ell", a_ell, "interaction length (default stability length + 1)");
  add_tolerances(analyze_cmd, common);

  // certify
  std::string c_path, c_out, c_side = "left";
  int c_j = 1;
  auto* certify_cmd = app.add_subcommand("certify", "search a stability witness and pushing operator");
  certify_cmd->add_option("tensor", c_path, "tensor JSON file")->required();
  certify_cmd->add_option("--j", c_j, "stability length")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--side", c_side, "left or right")
      ->check(CLI::IsMember({"left", "right"}));
  certify_cmd->add_option("--out", c_out, "witness file (default stdout)");
  add_tolerances(certify_cmd, common);

  // check
  std::string k_tensor, k_witness;
  auto* check_cmd = app.add_subcommand("check", "verify a witness file against a tensor");
  check_cmd->add_option("tensor", k_tensor, "tensor JSON file")->required();
  check_cmd->add_option("witness", k_witness, "witness JSON file")->required();
  add_tolerances(check_cmd, common);

  // groundspace
  std::string g_path, g_boundary = "obc";
  int g_ell = 2, g_n = 4;
  auto* ground_cmd = app.add_subcommand("groundspace", "compare a parent ground space with the MPS");
  ground_cmd->add_option("tensor", g_path, "tensor JSON file")->required();
  ground_cmd->add_option("--ell", g_ell, "interaction length")->check(CLI::PositiveNumber);
  ground_cmd->add_option("--n", g_n, "number of sites")->check(CLI::PositiveNumber);
  ground_cmd->add_option("--boundary", g_boundary, "obc or pbc")->check(CLI::IsMember({"obc", "pbc"}));
  add_tolerances(ground_cmd, common);

  // gallery
  int y_nmax = 7;
  bool y_verbose = false;
  std::string y_export;
  auto* gallery_cmd = app.add_subcommand("gallery", "run every gallery expectation");
  gallery_cmd->add_option("--nmax", y_nmax, "largest system size")->check(CLI::PositiveNumber);
  gallery_cmd->add_flag("--verbose,-v", y_verbose, "print passing checks too");
  gallery_cmd->add_option("--export", y_export, "write each gallery tensor to this directory");
  add_tolerances(gallery_cmd, common);

  // scan
  int s_count = 100, s_d = 2, s_D = 2, s_kmax = 6;
  std::uint64_t s_seed = 0;
  std::string s_dist = "gaussian", s_out;
  auto* scan_cmd = app.add_subcommand("scan", "random-tensor ensemble summary as CSV");
  scan_cmd->add_option("--count", s_count, "number of samples")->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--seed", s_seed, "base seed");
  scan_cmd->add_option("--dist", s_dist, "gaussian (complex) or real")
      ->check(CLI::IsMember({"gaussian", "real"}));
  scan_cmd->add_option("--d", s_d, "physical dimension")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--D", s_D, "bond dimension")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--kmax", s_kmax, "largest intersection length")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", s_out, "CSV file (default stdout)");
  add_tolerances(scan_cmd, common);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  if (argv.empty()) argv.push_back("mpsstab");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    const Tolerance tol = common.tolerance();
    if (*analyze_cmd) {
      AnalysisOptions opts;
      opts.tol = tol;
      opts.jmax = a_jmax;
      opts.kmax = a_kmax;
      opts.nmax = a_nmax;
      opts.ell = a_ell;
      const AnalysisReport r = analyze(load_tensor(a_path), opts);
      emit(report_to_json(r).dump(2) + "\n", a_out, out);
      return kOk;
    }
    if (*certify_cmd) {
      const MpsTensor a = load_tensor(c_path);
      const StabilitySearch s = stability_witness(a, c_j, side_from_string(c_side), tol);
      if (!s.found) {
        err << "no " << c_side << " witness at j = " << c_j << " (residual " << s.residual()
            << ")\n";
        return kOk;
      }
      const PushingOperator op = pushing_operator(a, s.best, tol);
      emit(witness_to_json(s.best, op).dump(2) + "\n", c_out, out);
      return kOk;
    }
    if (*check_cmd) {
      const MpsTensor a = load_tensor(k_tensor);
      const WitnessFile w = witness_from_json(parse_json_text(read_file(k_witness)));
      const WitnessCheck c = check_witness(a, w.witness, tol);
      Json j{{"valid", c.valid},
             {"side", to_string(w.witness.side)},
             {"j", w.witness.j},
             {"residual_invariance", c.residual_invariance},
             {"residual_identity", c.residual_identity}};
      if (w.O.size() > 0) {
        PushingOperator op{w.witness.side, w.witness.j, w.O, 0.0};
        if (w.O.rows() == w.O.cols() &&
            static_cast<double>(w.O.rows()) == std::pow(a.d(), w.witness.j + 1)) {
          j["fixed_point_residual"] = fixed_point_residual(a, op);
        }
      }
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (*ground_cmd) {
      const MpsTensor a = load_tensor(g_path);
      const GroundComparison g =
          verify_ground_equals_mps(a, g_ell, g_n, boundary_from_string(g_boundary), tol);
      Json j{{"boundary", g_boundary},   {"ell", g_ell},
             {"n", g_n},                 {"E0", g.ground.energy},
             {"degeneracy", g.gs_dim},   {"frustration_free", g.ground.frustration_free},
             {"mps_dim", g.mps_dim},     {"equals_mps", g.equal},
             {"max_residual", g.max_residual}};
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (*gallery_cmd) {
      if (!y_export.empty()) {
        for (const auto& e : builtin_entries()) save_tensor(y_export + "/" + e.name + ".json", e.tensor);
      }
      const auto records = run_all(y_nmax, tol);
      int passed = 0, failed = 0, skipped = 0;
      for (const auto& r : records) {
        if (r.status == Status::Pass) ++passed;
        if (r.status == Status::Fail) ++failed;
        if (r.status == Status::Skip) ++skipped;
        if (r.status == Status::Fail || y_verbose) {
          out << to_string(r.status) << "  " << r.entry << ": " << r.check << " [" << r.detail
              << "]";
          if (!r.note.empty()) out << " (" << r.note << ")";
          out << "\n";
        }
      }
      out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
      return failed == 0 ? kOk : kFindings;
    }
    if (*scan_cmd) {
      std::ostringstream csv;
      csv << "seed_index,d,D,inj_len,stab_left,stab_right,min_intersection_k\n";
      const int jmax = s_D * s_D + 1;
      for (int i = 0; i < s_count; ++i) {
        const MpsTensor a = random_tensor(s_seed, static_cast<std::uint64_t>(i), s_d, s_D, s_dist);
        const auto inj = injectivity_length(a, jmax, tol);
        const auto left = stability_length(a, Side::Left, jmax, tol);
        const auto right = stability_length(a, Side::Right, jmax, tol);
        std::optional<int> kmin;
        for (int k = 1; k <= s_kmax && !kmin; ++k) {
          if (intersection_check(a, k, tol).holds) kmin = k;
        }
        csv << i << ',' << s_d << ',' << s_D << ',' << optional_cell(inj) << ','
            << optional_cell(left ? std::optional<int>(left->j) : std::nullopt) << ','
            << optional_cell(right ? std::optional<int>(right->j) : std::nullopt) << ','
            << optional_cell(kmin) << "\n";
      }
      emit(csv.str(), s_out, out);
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace mpsstab::cli
