#pragma once

// JSON encodings: algebra files, certificate files, and verdict reports. Field
// order is fixed (ordered_json) so equal inputs serialize byte-identically.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "idealkit/matlie.hpp"
#include "idealkit/seq_dsl.hpp"
#include "idealkit/witness.hpp"

namespace idealkit {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline Json to_json(const AsymSig& s) { return s.str(); }

inline Json to_json(const NumericEvidence& e) {
  Json j;
  j["n_max"] = e.n_max;
  j["eps"] = e.eps;
  j["grid_points"] = e.grid_points;
  j["final_ratio"] = e.final_ratio;
  j["log10_final_ratio"] = e.log10_final_ratio;
  j["sup_ratio"] = e.sup_ratio;
  j["log10_sup_ratio"] = e.log10_sup_ratio;
  j["trend"] = e.trend;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = to_string(v.method);
  j["reason"] = v.reason;
  Json sigs = Json::array();
  for (const auto& s : v.signatures) sigs.push_back(to_json(s));
  j["signatures"] = sigs;
  if (v.limit) {
    j["limit"] = v.limit->str();
    j["limit_approx"] = static_cast<double>(v.limit->approx());
  }
  if (v.index) j["index"] = *v.index;
  if (v.numeric) j["numeric"] = to_json(*v.numeric);
  return j;
}

// ---------------------------------------------------------------------------
// Rationals and matrices

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    Rational q(mpz_class(j.dump()));
    return q;
  }
  throw InputError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

/// Accepts nested rows or a flat row-major array of n*n entries.
inline RationalMatrix matrix_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("matrix must be an array");
  RationalMatrix m(n, n);
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != n) throw InputError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!j[i].is_array() || j[i].size() != n) throw InputError("matrix row " + std::to_string(i) + " has wrong length");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
  }
  if (j.size() != n * n) throw InputError("flat matrix needs " + std::to_string(n * n) + " entries");
  for (std::size_t t = 0; t < n * n; ++t) m(t / n, t % n) = rational_from_json(j[t]);
  return m;
}

// ---------------------------------------------------------------------------
// Algebra files

inline Json to_json(const LieAlgebraPresentation& L) {
  Json j;
  j["name"] = L.name();
  j["ambient_dim"] = L.ambient_dim();
  Json basis = Json::array();
  for (const auto& b : L.basis()) basis.push_back(to_json(b));
  j["basis"] = basis;
  return j;
}

inline LieAlgebraPresentation algebra_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("algebra file must be a JSON object");
  for (const char* key : {"name", "ambient_dim", "basis"})
    if (!j.contains(key)) throw InputError(std::string("algebra file lacks \"") + key + "\"");
  if (!j["ambient_dim"].is_number_unsigned() || j["ambient_dim"].get<std::size_t>() == 0)
    throw InputError("ambient_dim must be a positive integer");
  if (!j["basis"].is_array()) throw InputError("basis must be an array");
  const auto n = j["ambient_dim"].get<std::size_t>();
  std::vector<RationalMatrix> basis;
  for (const auto& m : j["basis"]) basis.push_back(matrix_from_json(m, n));
  return {j["name"].get<std::string>(), n, std::move(basis)};
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline LieAlgebraPresentation load_algebra(const std::string& path) {
  return algebra_from_json(parse_json_text(read_file(path), "'" + path + "'"));
}

// ---------------------------------------------------------------------------
// Certificates

inline Json to_json(const Certificate& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  j["kind"] = "lie-non-simplicity-certificate";
  j["model_scope"] = c.model_scope;
  j["generator"] = {{"weights", to_dsl(c.generator)}, {"truncation", c.truncation}};
  j["softness"] = {{"status", to_string(c.softness_status)},
                   {"method", to_string(c.softness_method)},
                   {"reason", c.softness_reason}};
  j["branch"] = to_string(c.branch);
  Json pool = Json::array();
  for (const auto& s : c.pool) pool.push_back(to_dsl(s));
  j["pool"] = pool;
  j["partner"] = c.partner ? Json(to_dsl(*c.partner)) : Json(nullptr);
  if (c.branch == CertificateBranch::Commutator) {
    j["commutator"] = {{"formula", c.formula},
                       {"first_index", c.commutator_index},
                       {"value", c.commutator_value},
                       {"exact", c.commutator_exact}};
  } else {
    j["commutator"] = nullptr;
  }
  if (c.evidence_present) {
    j["evidence"] = {{"label", c.evidence_label}, {"T_band", c.t_band}, {"S_band", c.s_band}, {"A_band", c.a_band}};
  } else {
    j["evidence"] = nullptr;
  }
  Json obs = Json::array();
  for (const auto& o : c.obligations) obs.push_back({{"id", o.id}, {"statement", o.statement}, {"passed", o.passed}});
  j["obligations"] = obs;
  j["conclusion"] = c.conclusion;
  return j;
}

namespace detail {
inline Status status_from(const std::string& s) {
  if (s == "Holds") return Status::Holds;
  if (s == "Fails") return Status::Fails;
  if (s == "Unknown") return Status::Unknown;
  throw InputError("unknown status '" + s + "'");
}
inline Method method_from(const std::string& s) {
  if (s == "SymbolicProven") return Method::SymbolicProven;
  if (s == "NumericIndicated") return Method::NumericIndicated;
  throw InputError("unknown method '" + s + "'");
}
inline const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("certificate lacks \"") + key + "\"");
  return j.at(key);
}
}  // namespace detail

/// Parses a certificate. Sequences are parsed syntactically only so that an
/// invalid stored sequence is reported by verify_certificate, not here.
inline Certificate certificate_from_json(const Json& j) {
  using detail::need;
  try {
    Certificate c;
    c.schema_version = need(j, "schema_version").get<int>();
    if (c.schema_version != Certificate::kSchemaVersion)
      throw InputError("unsupported certificate schema_version " + std::to_string(c.schema_version));
    c.model_scope = need(j, "model_scope").get<std::string>();
    const Json& gen = need(j, "generator");
    c.generator = parse_seq_syntax(need(gen, "weights").get<std::string>());
    c.truncation = need(gen, "truncation").get<std::size_t>();
    const Json& soft = need(j, "softness");
    c.softness_status = detail::status_from(need(soft, "status").get<std::string>());
    c.softness_method = detail::method_from(need(soft, "method").get<std::string>());
    c.softness_reason = need(soft, "reason").get<std::string>();
    std::string branch = need(j, "branch").get<std::string>();
    if (branch == "commutator")
      c.branch = CertificateBranch::Commutator;
    else if (branch == "central")
      c.branch = CertificateBranch::Central;
    else
      throw InputError("unknown branch '" + branch + "'");
    for (const auto& s : need(j, "pool")) c.pool.push_back(parse_seq_syntax(s.get<std::string>()));
    if (const Json& p = need(j, "partner"); !p.is_null()) c.partner = parse_seq_syntax(p.get<std::string>());
    if (const Json& a = need(j, "commutator"); !a.is_null()) {
      c.formula = need(a, "formula").get<std::string>();
      c.commutator_index = need(a, "first_index").get<std::uint64_t>();
      c.commutator_value = need(a, "value").get<std::string>();
      c.commutator_exact = need(a, "exact").get<bool>();
    }
    if (const Json& e = need(j, "evidence"); !e.is_null()) {
      c.evidence_present = true;
      c.evidence_label = need(e, "label").get<std::string>();
      c.t_band = need(e, "T_band").get<std::vector<std::string>>();
      c.s_band = need(e, "S_band").get<std::vector<std::string>>();
      c.a_band = need(e, "A_band").get<std::vector<std::string>>();
    }
    for (const auto& o : need(j, "obligations"))
      c.obligations.push_back({need(o, "id").get<std::string>(), need(o, "statement").get<std::string>(),
                               need(o, "passed").get<bool>()});
    c.conclusion = need(j, "conclusion").get<std::string>();
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

inline Certificate load_certificate(const std::string& path) {
  return certificate_from_json(parse_json_text(read_file(path), "'" + path + "'"));
}

}  // namespace idealkit
