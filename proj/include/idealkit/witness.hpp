#pragma once

// Non-simplicity certificates for Lie algebras of compact operators built from
// weighted shifts. A certificate stores a non-soft generator T, a partner S with
// [T, S] != 0 (or the record that T commutes with a whole pool), and a list of
// obligations that verify_certificate re-derives from the stored data alone.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealkit/idealcalc.hpp"
#include "idealkit/matlie.hpp"
#include "idealkit/seqspace.hpp"

namespace idealkit {

/// Unilateral weighted shift T e_n = w_n e_{n+1}, with an N x N truncation size.
struct ShiftModel {
  SequenceExpr weights;
  std::size_t n = 64;
};

enum class BracketKind { AllZero, NonZero, Unknown };

inline const char* to_string(BracketKind k) {
  switch (k) {
    case BracketKind::AllZero: return "AllZero";
    case BracketKind::NonZero: return "NonZero";
    default: return "Unknown";
  }
}

/// [T_w, T_v] is the 2-step shift e_n -> a_n e_{n+2} with
/// a_n = v_n w_{n+1} - w_n v_{n+1}.
struct ShiftBracket {
  ShiftBracket(SequenceExpr weights_w, SequenceExpr weights_v) : w(std::move(weights_w)), v(std::move(weights_v)) {}

  SequenceExpr w, v;
  BracketKind kind = BracketKind::Unknown;
  std::optional<std::uint64_t> first_index;
  std::optional<SeqValue> first_value;
  std::string reason;

  SeqValue at(std::uint64_t n) const { return eval(v, n) * eval(w, n + 1) - eval(w, n) * eval(v, n + 1); }
};

namespace detail {
// Strips outer Scale nodes; two sequences with equal cores are proportional.
inline SequenceExpr scale_core(const SequenceExpr& s) {
  if (const auto* sc = s.as<node::Scale>()) return scale_core(sc->inner);
  return s;
}

// Nonzero beyond floating-point noise, for inexact entries.
inline bool clearly_nonzero(const SequenceExpr& w, const SequenceExpr& v, std::uint64_t n, const SeqValue& a) {
  double scale = std::fabs(eval(v, n).approx() * eval(w, n + 1).approx()) +
                 std::fabs(eval(w, n).approx() * eval(v, n + 1).approx());
  return std::fabs(a.approx()) > 1e-12 * scale;
}
}  // namespace detail

inline constexpr std::uint64_t kBracketScan = 4096;

inline ShiftBracket shift_bracket(const SequenceExpr& w, const SequenceExpr& v) {
  require_valid(w);
  require_valid(v);
  ShiftBracket b{w, v};
  if (detail::scale_core(w) == detail::scale_core(v)) {
    b.kind = BracketKind::AllZero;
    b.reason = "proportional weights commute";
    return b;
  }
  AsymSig sw = signature_of(w), sv = signature_of(v);
  std::uint64_t limit = kBracketScan;
  bool exhaustive = sw.zero_tail || sv.zero_tail;
  if (exhaustive) limit = std::min(sw.zero_tail ? sw.support : limit, sv.zero_tail ? sv.support : limit) + 1;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    SeqValue a = b.at(n);
    if (a.exact() ? !a.is_zero() : detail::clearly_nonzero(w, v, n, a)) {
      b.kind = BracketKind::NonZero;
      b.first_index = n;
      b.first_value = a;
      b.reason = a.exact() ? "first nonzero weight found exactly" : "first nonzero weight found numerically";
      return b;
    }
    if (!a.exact() && !a.is_zero()) exhaustive = false;
  }
  if (exhaustive) {
    b.kind = BracketKind::AllZero;
    b.reason = "a_n vanishes up to the end of a finite support";
  } else {
    b.reason = "no nonzero weight among the first " + std::to_string(limit) + " indices";
  }
  return b;
}

enum class CertificateBranch { Commutator, Central };

inline const char* to_string(CertificateBranch b) { return b == CertificateBranch::Commutator ? "commutator" : "central"; }

struct Obligation {
  std::string id;
  std::string statement;
  bool passed = false;
};

struct Certificate {
  static constexpr int kSchemaVersion = 1;
  int schema_version = kSchemaVersion;
  std::string model_scope = "unilateral weighted shifts, T e_n = w_n e_{n+1}";
  SequenceExpr generator = SequenceExpr::power(1);
  std::size_t truncation = 64;
  Status softness_status = Status::Unknown;
  Method softness_method = Method::SymbolicProven;
  std::string softness_reason;
  CertificateBranch branch = CertificateBranch::Commutator;
  std::vector<SequenceExpr> pool;
  std::optional<SequenceExpr> partner;
  std::string formula = "a_n = v_n*w_{n+1} - w_n*v_{n+1}";
  std::uint64_t commutator_index = 0;
  std::string commutator_value;  // exact "p/q", or a 17-digit decimal when inexact
  bool commutator_exact = false;
  // Finite truncation evidence; corroborating only.
  bool evidence_present = false;
  std::string evidence_label = "corroborating: finite truncation, not part of the proof";
  std::vector<std::string> t_band, s_band, a_band;
  std::vector<Obligation> obligations;
  std::string conclusion;
};

namespace detail {
inline std::vector<std::string> band(const RationalMatrix& m, std::size_t step, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_string(m(i + step, i)));
  return out;
}

inline bool all_exact(const SequenceExpr& s, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i)
    if (!eval(s, i).exact()) return false;
  return true;
}

inline const std::vector<std::string>& obligation_ids(CertificateBranch b) {
  static const std::vector<std::string> commutator{"T-infinite-rank", "T-not-soft", "A-nonzero"};
  static const std::vector<std::string> central{"T-infinite-rank", "T-not-soft", "T-central-in-pool"};
  return b == CertificateBranch::Commutator ? commutator : central;
}
}  // namespace detail

/// Builds a non-simplicity certificate. Refuses unless (T) is symbolically
/// proven not soft and T has infinite rank.
inline Certificate build_certificate(const ShiftModel& t, const std::vector<ShiftModel>& pool) {
  require_valid(t.weights);
  if (t.n < 3) throw DomainError("truncation size must be >= 3");
  if (signature_of(t.weights).zero_tail) throw DomainError("T has finite rank; the construction needs infinite rank");
  Verdict soft = is_soft(IdealExpr::principal(t.weights));
  if (soft.holds())
    throw DomainError("(T) is soft (" + soft.reason + "); the non-softness hypothesis is violated");
  if (!soft.fails() || soft.method != Method::SymbolicProven)
    throw DomainError("non-softness of (T) is not symbolically proven; refusing to build");

  if (pool.empty()) throw DomainError("partner pool is empty");

  Certificate c;
  c.generator = t.weights;
  c.truncation = t.n;
  c.softness_status = soft.status;
  c.softness_method = soft.method;
  c.softness_reason = soft.reason;
  for (const auto& s : pool) c.pool.push_back(s.weights);

  std::optional<ShiftBracket> chosen;
  bool undecided = false;
  for (const auto& s : pool) {
    ShiftBracket b = shift_bracket(t.weights, s.weights);
    if (b.kind == BracketKind::NonZero) {
      chosen = b;
      break;
    }
    if (b.kind == BracketKind::Unknown) undecided = true;
  }
  if (!chosen && undecided)
    throw DomainError("no pool partner has a decidable commutator with T; extend the pool");

  c.obligations.push_back({"T-infinite-rank", "T is not of finite rank", true});
  c.obligations.push_back({"T-not-soft", "(T) is not a soft ideal (symbolic)", true});
  if (chosen) {
    c.branch = CertificateBranch::Commutator;
    c.partner = chosen->v;
    c.commutator_index = *chosen->first_index;
    c.commutator_exact = chosen->first_value->exact();
    c.commutator_value = chosen->first_value->str();
    c.obligations.push_back({"A-nonzero", "A = [T, S] is nonzero", true});
    c.conclusion =
        "The Lie ideal generated by A = [T, S] is nonzero and does not contain T, hence the Lie algebra is not simple";
    if (detail::all_exact(t.weights, t.n) && detail::all_exact(*c.partner, t.n)) {
      RationalMatrix tm = shift_matrix(t.weights, t.n), sm = shift_matrix(*c.partner, t.n);
      c.evidence_present = true;
      c.t_band = detail::band(tm, 1, t.n - 1);
      c.s_band = detail::band(sm, 1, t.n - 1);
      c.a_band = detail::band(bracket(tm, sm), 2, t.n - 2);
    }
  } else {
    c.branch = CertificateBranch::Central;
    c.obligations.push_back({"T-central-in-pool", "[T, S] = 0 for every recorded pool partner", true});
    c.conclusion =
        "T commutes with every recorded pool partner; if T is central in the Lie algebra then span(T) is a proper "
        "nonzero Lie ideal. This conclusion is conditional on the pool";
  }
  return c;
}

namespace detail {
inline Verdict verify_fail(const std::string& what) {
  Verdict v;
  v.status = Status::Fails;
  v.reason = what;
  return v;
}

// Returns a failure message, or nullopt.
inline std::optional<std::string> check_truncation(const Certificate& c) {
  const std::size_t n = c.truncation;
  if (n < 3) return "truncation size below 3";
  if (c.branch == CertificateBranch::Central) {
    for (const auto& s : c.pool) {
      if (!all_exact(c.generator, n) || !all_exact(s, n)) continue;
      if (!bracket(shift_matrix(c.generator, n), shift_matrix(s, n)).is_zero())
        return "truncated T does not commute with pool partner " + to_dsl(s);
    }
    return std::nullopt;
  }
  if (!c.evidence_present) {
    if (all_exact(c.generator, n) && all_exact(*c.partner, n)) return "truncation evidence missing";
    return std::nullopt;  // skipped: non-rational weights
  }
  RationalMatrix tm = shift_matrix(c.generator, n), sm = shift_matrix(*c.partner, n);
  if (band(tm, 1, n - 1) != c.t_band) return "stored T band differs from the truncation of T";
  if (band(sm, 1, n - 1) != c.s_band) return "stored S band differs from the truncation of S";
  RationalMatrix a = bracket(tm, sm);
  ShiftBracket f{c.generator, *c.partner};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j + 2 && sgn(a(i, j)) != 0) return "truncated bracket is not a 2-step shift";
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    if (a(i + 1, i - 1) != f.at(i).rational())
      return "truncated bracket disagrees with the formula at n = " + std::to_string(i);
    if (to_string(a(i + 1, i - 1)) != c.a_band[i - 1])
      return "stored A band differs at n = " + std::to_string(i);
  }
  return std::nullopt;
}
}  // namespace detail

/// Re-derives every obligation from the stored data. Holds iff all pass; otherwise
/// Fails naming the first failing obligation (a)..(d).
inline Verdict verify_certificate(const Certificate& c) {
  using detail::verify_fail;
  if (c.schema_version != Certificate::kSchemaVersion)
    return verify_fail("unsupported schema version " + std::to_string(c.schema_version));
  try {
    // (a) softness
    require_valid(c.generator);
    Verdict soft = is_soft(IdealExpr::principal(c.generator));
    if (!(soft.fails() && soft.method == Method::SymbolicProven) || c.softness_status != Status::Fails ||
        c.softness_method != Method::SymbolicProven)
      return verify_fail(std::string("obligation (a) failed: recomputed softness of (T) is ") + to_string(soft.status) +
                         " (" + to_string(soft.method) + "), stored " + to_string(c.softness_status));

    // (b) commutator
    if (c.branch == CertificateBranch::Commutator) {
      if (!c.partner) return verify_fail("obligation (b) failed: no partner recorded");
      if (c.commutator_index == 0) return verify_fail("obligation (b) failed: index must be >= 1");
      ShiftBracket f{c.generator, *c.partner};
      SeqValue a = f.at(c.commutator_index);
      bool match;
      if (a.exact()) {
        match = c.commutator_exact && !a.is_zero() && to_string(a.rational()) == c.commutator_value;
      } else {
        double stored = 0;
        try {
          stored = std::stod(c.commutator_value);
        } catch (const std::exception&) {
          return verify_fail("obligation (b) failed: unreadable commutator value");
        }
        match = !c.commutator_exact && detail::clearly_nonzero(c.generator, *c.partner, c.commutator_index, a) &&
                std::fabs(stored - a.approx()) <= 1e-12 * std::fabs(a.approx());
      }
      if (!match)
        return verify_fail("obligation (b) failed: a_" + std::to_string(c.commutator_index) + " recomputes to " +
                           a.str() + ", stored " + c.commutator_value);
      for (std::uint64_t n = 1; n < c.commutator_index; ++n)
        if (f.at(n).exact() && !f.at(n).is_zero())
          return verify_fail("obligation (b) failed: a_" + std::to_string(n) + " is nonzero before the stored index");
    } else {
      if (c.pool.empty()) return verify_fail("obligation (b) failed: central branch with an empty pool");
      for (const auto& s : c.pool)
        if (shift_bracket(c.generator, s).kind != BracketKind::AllZero)
          return verify_fail("obligation (b) failed: T does not provably commute with " + to_dsl(s));
    }

    // (c) truncation
    if (auto err = detail::check_truncation(c)) return verify_fail("obligation (c) failed: " + *err);

    // (d) checklist
    const auto& ids = detail::obligation_ids(c.branch);
    if (c.obligations.size() != ids.size()) return verify_fail("obligation (d) failed: checklist incomplete");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (c.obligations[i].id != ids[i] || !c.obligations[i].passed)
        return verify_fail("obligation (d) failed: checklist item '" + ids[i] + "' missing or not passed");
    }
    if (signature_of(c.generator).zero_tail) return verify_fail("obligation (d) failed: T has finite rank");
  } catch (const InputError& e) {
    return verify_fail(std::string("certificate data invalid: ") + e.what());
  }
  Verdict v;
  v.status = Status::Holds;
  v.reason = "all obligations re-derived";
  return v;
}

}  // namespace idealkit
