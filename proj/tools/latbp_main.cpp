#include "latbp/approximants.hpp"
#include "latbp/center.hpp"
#include "latbp/defects.hpp"
#include "latbp/gallery.hpp"
#include "latbp/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write to " + out_path);
    out << j.dump(2) << "\n";
  }
}

struct BoundChecks {
  json entries = json::array();
  bool all_hold = true;
  void add(const std::string& name, double lhs, double rhs) {
    bool holds = lhs <= rhs;
    all_hold &= holds;
    entries.push_back({{"name", name}, {"lhs", lhs}, {"rhs", rhs}, {"holds", holds}});
  }
};

int run_analyze(const std::string& matrix_path, const std::string& norm, int exact_max_n,
                std::uint64_t seed, const std::string& out, bool no_timestamp) {
  latbp::Matrix m = latbp::load_matrix(matrix_path);
  latbp::NormSpec spec = latbp::parse_norm_spec(norm);

  latbp::AnalyzeOptions opts;
  opts.defect.exact_max_n = exact_max_n;
  opts.defect.seed = seed;
  opts.oracle.seed = seed;
  opts.dp.seed = seed;
  latbp::DefectReport rep = latbp::analyze_operator(m, spec, opts);

  json j = latbp::defect_report_to_json(rep, !no_timestamp);
  j["matrix"] = latbp::matrix_to_json(m);

  // Approximants and the bound checks tying them to the defect values.
  const bool exact = rep.bp.exact && spec.has_exact_operator_norm();
  BoundChecks checks;
  latbp::Matrix diag = latbp::diagonal_part(m);
  latbp::Matrix ck = latbp::ck_multiplier(m);
  json approx;
  approx["diagonal_part"] = latbp::matrix_to_json(diag);
  approx["ck_multiplier"] = latbp::matrix_to_json(ck);

  if (exact) {
    double bp = rep.bp.value;
    double norm_m = latbp::operator_norm_exact(m, spec);
    checks.add("bp_le_norm", bp, norm_m + 1e-12);
    checks.add("diag_residual_le_4bp",
               latbp::operator_norm_exact(latbp::Matrix(m - diag), spec), 4.0 * bp + 1e-8);
    checks.add("diag_norm_le_norm", latbp::operator_norm_exact(diag, spec), norm_m + 1e-12);
    if (spec.is_linf())
      checks.add("ck_residual_le_2bp", latbp::operator_norm_exact(latbp::Matrix(m - ck), spec),
                 2.0 * bp + 1e-9);
    if (rep.ip_available) checks.add("ip_eq_bp", std::abs(rep.ip - bp), 1e-9);
    if (rep.commutator_available) {
      checks.add("commutator_ge_bp", bp, rep.commutator.value + 1e-9);
      checks.add("commutator_le_2bp", rep.commutator.value, 2.0 * bp + 1e-9);
    }
    checks.add("dp_le_2bp", rep.dp_lb.value, 2.0 * bp + 1e-9);
    checks.add("oracle_le_bp", rep.oracle_lb, bp + 1e-9);
    if (rep.dist_available) {
      checks.add("dist_ge_bp", bp, rep.dist_diag.value + 1e-9);
      checks.add("dist_le_4bp", rep.dist_diag.value, 4.0 * bp + 1e-8);
    }
    if (rep.inverse) checks.add("inverse_bound", rep.inverse->bp_inverse, rep.inverse->bound + 1e-8);
  }

  // Local approximant at the normalized all-ones probe with λ = ‖M‖.
  {
    latbp::Vector x = latbp::Vector::Ones(m.rows());
    x /= latbp::vector_norm(x, spec);
    double lambda = rep.op_norm.upper;
    latbp::Matrix local = latbp::local_bp_approximant(m, x, lambda, spec);
    latbp::Vector residual = m * x - local * x;
    latbp::Vector excess = latbp::pos_part(
        latbp::Vector(latbp::abs_of(latbp::Vector(m * x)) - lambda * latbp::abs_of(x)));
    approx["local"] = {{"x", latbp::vector_to_json(x)},
                       {"lambda", lambda},
                       {"matrix", latbp::matrix_to_json(local)},
                       {"residual", latbp::vector_norm(residual, spec)}};
    checks.add("local_residual_identity",
               std::abs(latbp::vector_norm(residual, spec) - latbp::vector_norm(excess, spec)),
               1e-12);
    checks.add("local_norm_le_lambda", local.diagonal().cwiseAbs().maxCoeff(), lambda + 1e-12);
  }

  // Two-halves block compression plus the averaging identity along it.
  if (m.rows() >= 2) {
    latbp::IndexSet lowers, uppers;
    for (latbp::Index i = 0; i < m.rows(); ++i)
      (i < m.rows() / 2 ? lowers : uppers).push_back(i);
    latbp::Partition halves(m.rows(), {lowers, uppers});
    latbp::Matrix compressed = latbp::partition_compress(m, halves);
    approx["partition_compress_halves"] = latbp::matrix_to_json(compressed);
    if (exact)
      checks.add("compress_residual_le_4bp",
                 latbp::operator_norm_exact(latbp::Matrix(m - compressed), spec),
                 4.0 * rep.bp.value + 1e-8);
    checks.add("averaging_identity", latbp::offdiag_average_check(m, halves), 1e-12);
  }

  if ((m.array() >= 0.0).all()) {
    std::vector<latbp::Partition> chain{latbp::Partition::one_block(m.rows()),
                                        latbp::Partition::finest(m.rows())};
    std::vector<latbp::Vector> probes{latbp::Vector::Ones(m.rows())};
    latbp::NetInfimumResult net = latbp::positive_net_infimum(m, chain, probes);
    approx["net_infimum"] = {{"limit", latbp::matrix_to_json(net.limit)},
                             {"monotone", net.monotone}};
    checks.add("positive_net_monotone", net.worst_violation, 1e-12);
  }

  j["approximants"] = approx;
  j["bound_checks"] = checks.entries;
  emit(j, out);
  return checks.all_hold ? kExitOk : kExitAssertion;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, const std::string& out,
               bool no_timestamp) {
  latbp::SuiteReport rep;
  if (suite == "function") {
    latbp::FunctionSuiteConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    rep = latbp::function_suite(cfg);
  } else {
    latbp::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.scope = suite;
    rep = latbp::random_suite(cfg);
  }
  emit(latbp::suite_report_to_json(rep, !no_timestamp), out);
  return rep.total_failures == 0 ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defect functionals, band-preserving approximants and counterexample "
               "certificates on finite atomic lattices"};
  app.require_subcommand(1);

  std::string matrix_path, norm = "linf", out_path;
  int exact_max_n = latbp::kDefaultExactCap;
  std::uint64_t seed = 42;
  bool no_timestamp = false;

  auto* analyze = app.add_subcommand("analyze", "full defect report for a matrix");
  analyze->add_option("--matrix", matrix_path, "matrix json file")->required();
  analyze->add_option("--norm", norm, "l1|l2|linf|lp:<p>|wsup:<weights.json>");
  analyze->add_option("--exact-max-n", exact_max_n, "subset enumeration cap");
  analyze->add_option("--seed", seed, "root seed");
  analyze->add_option("--out", out_path, "write the report here instead of stdout");
  analyze->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  std::string suite = "bounds";
  int trials = 100;
  auto* verify = app.add_subcommand("verify", "random-ensemble invariant suites");
  verify->add_option("--suite", suite, "bounds|approximants|function")
      ->check(CLI::IsMember({"bounds", "approximants", "function", "all"}));
  verify->add_option("--trials", trials, "number of seeded trials");
  verify->add_option("--seed", seed, "root seed");
  verify->add_option("--out", out_path, "write the report here instead of stdout");
  verify->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  double eps = 0.1;
  int walsh_i = 4;
  auto* gallery = app.add_subcommand("gallery", "named examples with asserted values");
  gallery->require_subcommand(1);
  auto* anti = gallery->add_subcommand("antidiagonal", "2x2 antidiagonal sharpness example");
  anti->add_option("--eps", eps, "antidiagonal entry");
  anti->add_option("--out", out_path, "write the report here instead of stdout");
  anti->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  auto* walsh = gallery->add_subcommand("walsh", "Hadamard modulus-gap example");
  walsh->add_option("--i", walsh_i, "log2 of the dimension (2..13)");
  walsh->add_option("--out", out_path, "write the report here instead of stdout");
  walsh->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  int ce_n = 4, depth = 12;
  std::string phi_path, psi_path;
  auto* counter = app.add_subcommand("counterexample", "certificates against multiplication candidates");
  counter->require_subcommand(1);
  auto* elat = counter->add_subcommand("e-lattice", "dyadically weighted function lattice");
  elat->add_option("--n", ce_n, "operator index")->required();
  elat->add_option("--phi", phi_path, "candidate multiplier (pl json)")->required();
  elat->add_option("--depth", depth, "dyadic depth K");
  elat->add_option("--out", out_path, "write the report here instead of stdout");
  elat->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  auto* ren = counter->add_subcommand("renorm", "renormed convergent-sequence model");
  ren->add_option("--eps", eps, "renorming parameter in (0,1)")->required();
  ren->add_option("--psi", psi_path, "candidate multiplier (seq json)")->required();
  ren->add_option("--out", out_path, "write the report here instead of stdout");
  ren->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  try {
    app.parse(argc, argv);

    if (*analyze) return run_analyze(matrix_path, norm, exact_max_n, seed, out_path, no_timestamp);
    if (*verify) return run_verify(suite == "all" ? "all" : suite, trials, seed, out_path,
                                   no_timestamp);
    if (*anti) {
      latbp::AntidiagonalBundle bundle = latbp::antidiagonal_example(eps);
      emit(latbp::antidiagonal_to_json(bundle, !no_timestamp), out_path);
      return kExitOk;
    }
    if (*walsh) {
      latbp::WalshBundle bundle = latbp::walsh_modulus_example(walsh_i);
      emit(latbp::walsh_to_json(bundle, !no_timestamp), out_path);
      return kExitOk;
    }
    if (*elat) {
      latbp::PLFunction phi = latbp::load_pl(phi_path);
      latbp::ELatticeConfig cfg{depth};
      latbp::ECertificate cert = latbp::e_certificate(ce_n, phi, cfg);
      json j = latbp::e_certificate_to_json(cert);
      j["schema"] = latbp::kReportSchema;
      j["kind"] = "counterexample.e-lattice";
      j["n"] = ce_n;
      j["depth"] = depth;
      emit(j, out_path);
      return cert.lower_bound >= 0.5 - 1e-12 ? kExitOk : kExitAssertion;
    }
    if (*ren) {
      latbp::SeqWithLimit psi = latbp::load_seq(psi_path);
      latbp::RenormCertificate cert = latbp::renorm_certificate(eps, psi);
      json j = latbp::renorm_certificate_to_json(cert);
      j["schema"] = latbp::kReportSchema;
      j["kind"] = "counterexample.renorm";
      j["eps"] = eps;
      emit(j, out_path);
      bool ok = cert.lower_bound >= cert.guarantee - 1e-12 && cert.contraction_verified &&
                cert.center_verified;
      return ok ? kExitOk : kExitAssertion;
    }
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}
