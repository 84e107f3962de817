#pragma once

#include "latbp/defects.hpp"
#include "latbp/elattice.hpp"
#include "latbp/gallery.hpp"
#include "latbp/norms.hpp"
#include "latbp/renorm.hpp"
#include "latbp/types.hpp"

#include <json.hpp>

#include <string>

namespace latbp {

inline constexpr const char* kReportSchema = "latbp-report-v1";

// Wire formats:
//   vector  {"n": int, "entries": [...]}
//   matrix  {"n": int, "rows": [[...], ...]}
//   norm    "l1" | "l2" | "linf" | "lp:<p>" | "wsup:<path-to-weights-json>"
//   PL fn   {"breakpoints": [...], "values": [...]}
//   seq     {"entries": [...], "limit": x, "delta": d}

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json pl_to_json(const PLFunction& f);
PLFunction pl_from_json(const nlohmann::json& j);

nlohmann::json seq_to_json(const SeqWithLimit& s);
SeqWithLimit seq_from_json(const nlohmann::json& j);

/// Full grammar including "wsup:<path>" (reads the weights file).
NormSpec parse_norm_spec(const std::string& text);

nlohmann::json defect_report_to_json(const DefectReport& report, bool with_timestamp);
nlohmann::json suite_report_to_json(const SuiteReport& report, bool with_timestamp);
nlohmann::json antidiagonal_to_json(const AntidiagonalBundle& bundle, bool with_timestamp);
nlohmann::json walsh_to_json(const WalshBundle& bundle, bool with_timestamp);
nlohmann::json e_certificate_to_json(const ECertificate& cert);
nlohmann::json renorm_certificate_to_json(const RenormCertificate& cert);

Matrix load_matrix(const std::string& path);
Vector load_vector(const std::string& path);
PLFunction load_pl(const std::string& path);
SeqWithLimit load_seq(const std::string& path);

}  // namespace latbp
