#include "latbp/json_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace latbp {

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

void stamp(nlohmann::json& j, bool with_timestamp) {
  j["schema"] = kReportSchema;
  if (with_timestamp) j["timestamp"] = iso_timestamp();
}

nlohmann::json index_set_to_json(const IndexSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i : s) out.push_back(i);
  return out;
}

nlohmann::json subset_witness_to_json(const SubsetWitness& w) {
  return {{"value", w.value}, {"subset", index_set_to_json(w.subset)}, {"exact", w.exact}};
}

}  // namespace

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json entries = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) entries.push_back(v[i]);
  return {{"n", v.size()}, {"entries", entries}};
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw std::invalid_argument("vector json: expected {\"n\", \"entries\"}");
  const auto& entries = j.at("entries");
  Vector v(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v[static_cast<Index>(i)] = entries[i].get<Scalar>();
  if (j.contains("n") && j.at("n").get<Index>() != v.size())
    throw std::invalid_argument("vector json: n does not match entries length");
  if (!v.allFinite()) throw std::invalid_argument("vector json: non-finite entry");
  return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", rows}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw std::invalid_argument("matrix json: expected {\"n\", \"rows\"}");
  const auto& rows = j.at("rows");
  const Index n = static_cast<Index>(rows.size());
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Index>(row.size()) != n)
      throw std::invalid_argument("matrix json: rows must form a square matrix");
    for (Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<Scalar>();
  }
  if (j.contains("n") && j.at("n").get<Index>() != n)
    throw std::invalid_argument("matrix json: n does not match row count");
  if (!m.allFinite()) throw std::invalid_argument("matrix json: non-finite entry");
  return m;
}

nlohmann::json pl_to_json(const PLFunction& f) {
  return {{"breakpoints", f.breakpoints}, {"values", f.values}};
}

PLFunction pl_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
    throw std::invalid_argument("pl json: expected {\"breakpoints\", \"values\"}");
  return PLFunction(j.at("breakpoints").get<std::vector<Scalar>>(),
                    j.at("values").get<std::vector<Scalar>>());
}

nlohmann::json seq_to_json(const SeqWithLimit& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (Index i = 0; i < s.entries.size(); ++i) entries.push_back(s.entries[i]);
  return {{"entries", entries}, {"limit", s.limit}, {"delta", s.delta}};
}

SeqWithLimit seq_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j.contains("limit"))
    throw std::invalid_argument("seq json: expected {\"entries\", \"limit\", \"delta\"}");
  SeqWithLimit s;
  const auto& entries = j.at("entries");
  s.entries.resize(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    s.entries[static_cast<Index>(i)] = entries[i].get<Scalar>();
  s.limit = j.at("limit").get<Scalar>();
  s.delta = j.value("delta", 0.0);
  return s;
}

NormSpec parse_norm_spec(const std::string& text) {
  if (text.rfind("wsup:", 0) == 0) {
    std::string path = text.substr(5);
    nlohmann::json j = load_json_file(path);
    Vector w = j.is_array() ? vector_from_json(nlohmann::json{{"entries", j}}) : vector_from_json(j);
    return NormSpec::weighted_sup(w);
  }
  return parse_norm_spec_inline(text);
}

nlohmann::json defect_report_to_json(const DefectReport& report, bool with_timestamp) {
  nlohmann::json j;
  stamp(j, with_timestamp);
  j["kind"] = "analyze";
  j["dim"] = report.dim;
  j["norm"] = report.norm;
  j["seed"] = report.seed;
  j["op_norm"] = {{"lower", report.op_norm.lower},
                  {"upper", report.op_norm.upper},
                  {"exact", report.op_norm.exact}};
  j["bp"] = subset_witness_to_json(report.bp);
  j["oracle_lower_bound"] = report.oracle_lb;
  if (report.ip_available) j["ip"] = report.ip;
  j["dp_lower_bound"] = {{"value", report.dp_lb.value},
                         {"support_x", index_set_to_json(report.dp_lb.support_x)},
                         {"support_y", index_set_to_json(report.dp_lb.support_y)},
                         {"x", report.dp_lb.x.size() ? vector_to_json(report.dp_lb.x) : nlohmann::json()},
                         {"y", report.dp_lb.y.size() ? vector_to_json(report.dp_lb.y) : nlohmann::json()}};
  if (report.commutator_available) j["commutator_max"] = subset_witness_to_json(report.commutator);
  if (report.dist_available) {
    j["dist_to_diagonal"] = {
        {"value", report.dist_diag.value},
        {"lower", report.dist_diag.lower},
        {"upper", report.dist_diag.upper},
        {"status", report.dist_diag.status == DistStatus::Exact ? "exact" : "convex-numerical"},
        {"minimizer", vector_to_json(report.dist_diag.minimizer)}};
  }
  if (report.inverse) {
    j["inverse_check"] = {{"bp", report.inverse->bp},
                          {"bp_inverse", report.inverse->bp_inverse},
                          {"inverse_norm", report.inverse->inverse_norm},
                          {"bound", report.inverse->bound},
                          {"slack_ratio", report.inverse->slack_ratio},
                          {"holds", report.inverse->holds}};
  }
  if (report.center_at_defect) {
    const CenterEstimate& c = *report.center_at_defect;
    j["center_at_defect"] = {{"epsilon", c.epsilon},
                             {"rho_lower", c.rho_lower},
                             {"rho_upper", c.feasible ? nlohmann::json(c.rho_upper)
                                                      : nlohmann::json("infeasible")},
                             {"feasible", c.feasible},
                             {"status", "estimate"},
                             {"restarts", c.restarts},
                             {"iterations", c.iterations}};
  }
  return j;
}

nlohmann::json suite_report_to_json(const SuiteReport& report, bool with_timestamp) {
  nlohmann::json j;
  stamp(j, with_timestamp);
  j["kind"] = "verify";
  j["seed"] = report.config.seed;
  j["trials"] = report.config.trials;
  nlohmann::json dims = nlohmann::json::array();
  for (Index d : report.config.dims) dims.push_back(d);
  j["dims"] = dims;
  j["specs"] = report.config.specs;
  j["ensembles"] = report.config.ensembles;
  nlohmann::json ineq;
  for (const auto& [name, stats] : report.inequalities) {
    ineq[name] = {{"checks", stats.checks},
                  {"failures", stats.failures},
                  {"worst_slack", stats.worst_slack}};
  }
  j["inequalities"] = ineq;
  j["total_checks"] = report.total_checks;
  j["total_failures"] = report.total_failures;
  return j;
}

nlohmann::json antidiagonal_to_json(const AntidiagonalBundle& bundle, bool with_timestamp) {
  nlohmann::json j;
  stamp(j, with_timestamp);
  j["kind"] = "gallery.antidiagonal";
  j["eps"] = bundle.eps;
  j["matrix"] = matrix_to_json(bundle.m);
  for (const auto& [name, pn] : bundle.per_norm) {
    j["per_norm"][name] = {{"bp", pn.bp},
                           {"bp_inverse", pn.bp_inverse},
                           {"op_norm", pn.op_norm},
                           {"inverse_bound", pn.inverse_bound},
                           {"ratio", pn.ratio}};
  }
  return j;
}

nlohmann::json walsh_to_json(const WalshBundle& bundle, bool with_timestamp) {
  nlohmann::json j;
  stamp(j, with_timestamp);
  j["kind"] = "gallery.walsh";
  j["i"] = bundle.i;
  j["dim"] = bundle.dim;
  j["gap"] = bundle.gap;
  j["gap_permuted"] = bundle.gap_permuted;
  j["dist_to_identity"] = bundle.dist_to_identity;
  j["bp_upper"] = bundle.bp_upper;
  j["modulus_bp_lower"] = bundle.modulus_bp_lower;
  if (bundle.bp_exact >= 0.0) {
    j["bp_exact"] = bundle.bp_exact;
    j["modulus_bp_exact"] = bundle.modulus_bp_exact;
  }
  return j;
}

nlohmann::json e_certificate_to_json(const ECertificate& cert) {
  return {{"lower_bound", cert.lower_bound},
          {"sup_phi", cert.sup_phi},
          {"point_term", cert.point_term},
          {"witness_bump", pl_to_json(cert.witness_bump)},
          {"witness_bump_value", cert.witness_bump_value},
          {"witness_point", pl_to_json(cert.witness_point)},
          {"witness_point_value", cert.witness_point_value}};
}

nlohmann::json renorm_certificate_to_json(const RenormCertificate& cert) {
  return {{"lower_bound", cert.lower_bound},
          {"sup_psi", cert.sup_psi},
          {"point_term", cert.point_term},
          {"guarantee", cert.guarantee},
          {"contraction_margin", cert.contraction_margin},
          {"center_margin", cert.center_margin},
          {"contraction_verified", cert.contraction_verified},
          {"center_verified", cert.center_verified}};
}

Matrix load_matrix(const std::string& path) { return matrix_from_json(load_json_file(path)); }
Vector load_vector(const std::string& path) { return vector_from_json(load_json_file(path)); }
PLFunction load_pl(const std::string& path) { return pl_from_json(load_json_file(path)); }
SeqWithLimit load_seq(const std::string& path) { return seq_from_json(load_json_file(path)); }

}  // namespace latbp
