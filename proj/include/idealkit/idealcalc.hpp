#pragma once

// B(H)-ideals presented through their characteristic sets. A principal ideal (T)
// is identified with the singular-number sequence s(T); membership, softness and
// idempotency then become O/o questions about ampliations of that sequence.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "idealkit/seq_dsl.hpp"
#include "idealkit/seqspace.hpp"

namespace idealkit {

class IdealExpr {
 public:
  enum class Kind { Principal, FiniteRank, Compact, Product };

  static IdealExpr principal(SequenceExpr gen) {
    IdealExpr e(Kind::Principal);
    e.gen_ = std::make_shared<const SequenceExpr>(std::move(gen));
    return e;
  }
  static IdealExpr finite_rank() { return IdealExpr(Kind::FiniteRank); }
  static IdealExpr compact() { return IdealExpr(Kind::Compact); }
  static IdealExpr product(IdealExpr left, IdealExpr right) {
    IdealExpr e(Kind::Product);
    e.left_ = std::make_shared<const IdealExpr>(std::move(left));
    e.right_ = std::make_shared<const IdealExpr>(std::move(right));
    return e;
  }

  Kind kind() const { return kind_; }
  const SequenceExpr& generator() const { return *gen_; }
  const IdealExpr& left() const { return *left_; }
  const IdealExpr& right() const { return *right_; }

  /// Same grammar as parse_ideal_dsl: factors joined by '*'.
  std::string str() const {
    switch (kind_) {
      case Kind::Principal: return to_dsl(*gen_);
      case Kind::FiniteRank: return "F";
      case Kind::Compact: return "K";
      default: return left_->str() + "*" + right_->str();
    }
  }

  friend bool operator==(const IdealExpr& a, const IdealExpr& b) { return a.str() == b.str(); }

 private:
  explicit IdealExpr(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const SequenceExpr> gen_;
  std::shared_ptr<const IdealExpr> left_, right_;
};

namespace detail {
struct Factors {
  std::vector<SequenceExpr> gens;
  int compact = 0;
  bool finite_rank = false;
};

inline void collect_factors(const IdealExpr& e, Factors& out) {
  switch (e.kind()) {
    case IdealExpr::Kind::Principal: {
      require_valid(e.generator());
      AsymSig s = signature_of(e.generator());
      if (s.zero_tail && s.support == 0) throw DomainError("the zero ideal is not modeled");
      if (s.zero_tail)
        out.finite_rank = true;
      else
        out.gens.push_back(e.generator());
      break;
    }
    case IdealExpr::Kind::FiniteRank: out.finite_rank = true; break;
    case IdealExpr::Kind::Compact: ++out.compact; break;
    case IdealExpr::Kind::Product:
      collect_factors(e.left(), out);
      collect_factors(e.right(), out);
      break;
  }
}
}  // namespace detail

/// Normal form. Products of B(H)-ideals commute, K^2 = K and F*I = F for nonzero I,
/// so every product collapses to one of
///   Principal(g) | Compact | FiniteRank | Principal(g)*K | X*F.
/// Principal factors fuse into the pointwise product of generators:
/// (xi)(eta) = (xi eta) because D_m(a) D_m(b) = D_m(ab) and D_m a <= D_k a for m <= k.
inline IdealExpr make_ideal(const IdealExpr& spec) {
  detail::Factors f;
  detail::collect_factors(spec, f);
  std::optional<IdealExpr> core;
  if (!f.gens.empty()) {
    SequenceExpr g = f.gens.front();
    for (std::size_t i = 1; i < f.gens.size(); ++i) g = SequenceExpr::product(g, f.gens[i]);
    core = IdealExpr::principal(g);
    if (f.compact) core = IdealExpr::product(*core, IdealExpr::compact());
  } else if (f.compact) {
    core = IdealExpr::compact();
  }
  if (f.finite_rank) {
    if (!core) return IdealExpr::finite_rank();
    return IdealExpr::product(*core, IdealExpr::finite_rank());
  }
  return *core;
}

/// IDEAL := FACTOR ('*' FACTOR)*,  FACTOR := 'F' | 'K' | SEQ
inline IdealExpr parse_ideal_dsl(std::string_view text) {
  std::vector<IdealExpr> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t star = text.find('*', start);
    std::string_view part = text.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
    std::string trimmed;
    for (char c : part)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed == "F")
      factors.push_back(IdealExpr::finite_rank());
    else if (trimmed == "K")
      factors.push_back(IdealExpr::compact());
    else {
      try {
        factors.push_back(IdealExpr::principal(parse_seq_dsl(part)));
      } catch (const ParseError& e) {
        throw ParseError("in ideal factor: " + e.message(), start + e.offset());
      }
    }
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  IdealExpr out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = IdealExpr::product(out, factors[i]);
  return out;
}

namespace detail {

/// Smallest m >= 1 with compare(x, D_m g, mode) holding; the predicate is monotone
/// in m because rate(D_m g) = rate(g)^{1/m} increases with m.
inline Verdict ampliated_domination(const SequenceExpr& x, const SequenceExpr& g, Mode mode) {
  AsymSig sx = signature_of(x), sg = signature_of(g);
  auto at = [&](std::uint64_t m) { return compare(x, ampliate(m, g), mode); };

  Verdict first = at(1);
  if (first.holds() || sx.zero_tail || sg.rate.is_one()) {
    if (first.holds()) first.index = 1;
    if (!first.holds() && sg.rate.is_one())
      first.reason += "; ampliation leaves a polynomial-class signature fixed, so m = 1 decides";
    return first;
  }
  if (sx.rate.is_one()) {
    Verdict v = first;
    v.reason = "polynomial-class decay " + sx.str() + " is never dominated by an ampliated geometric sequence " +
               sg.str();
    return v;
  }
  std::uint64_t lo = 1, hi = 2;
  while (!at(hi).holds()) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (at(mid).holds())
      hi = mid;
    else
      lo = mid;
  }
  Verdict v = at(hi);
  v.index = hi;
  v.reason = "m = " + std::to_string(hi) + ": " + v.reason;
  return v;
}

inline bool finite_support(const SequenceExpr& x) { return signature_of(x).zero_tail; }

}  // namespace detail

/// xi in Sigma(I).
inline Verdict member(const SequenceExpr& x, const IdealExpr& ideal) {
  require_valid(x);
  IdealExpr I = make_ideal(ideal);
  Verdict v;
  v.method = Method::SymbolicProven;
  switch (I.kind()) {
    case IdealExpr::Kind::Compact:
      v.status = Status::Holds;
      v.reason = "Sigma(K) is all of c0*";
      return v;
    case IdealExpr::Kind::FiniteRank: {
      bool fin = detail::finite_support(x);
      v.status = fin ? Status::Holds : Status::Fails;
      v.reason = fin ? "finite support" : "infinite support is not finite rank";
      v.signatures = {signature_of(x)};
      return v;
    }
    case IdealExpr::Kind::Principal:
      return detail::ampliated_domination(x, I.generator(), Mode::BigO);
    case IdealExpr::Kind::Product:
      break;
  }
  if (I.right().kind() == IdealExpr::Kind::FiniteRank) {
    bool fin = detail::finite_support(x);
    v.status = fin ? Status::Holds : Status::Fails;
    v.reason = fin ? "finite support (product with F is F)" : "product with F is F; infinite support";
    return v;
  }
  // (g)K: x = o(D_m g) for some m.
  return detail::ampliated_domination(x, I.left().generator(), Mode::LittleO);
}

/// I = I K. For principal ideals: s_{kn} = o(s_n) for some k >= 2, and k = 2 decides
/// symbolically because subsampling maps rate to rate^k.
inline Verdict is_soft(const IdealExpr& ideal) {
  IdealExpr I = make_ideal(ideal);
  Verdict v;
  v.method = Method::SymbolicProven;
  switch (I.kind()) {
    case IdealExpr::Kind::FiniteRank:
    case IdealExpr::Kind::Compact:
      v.status = Status::Holds;
      v.reason = "idempotent ideal, hence soft";
      return v;
    case IdealExpr::Kind::Product:
      v.status = Status::Holds;
      v.reason = I.right().kind() == IdealExpr::Kind::FiniteRank ? "product with F is F, idempotent"
                                                                 : "(I K) K = I K, soft by construction";
      return v;
    case IdealExpr::Kind::Principal:
      break;
  }
  const SequenceExpr& g = I.generator();
  Verdict c = compare(subsample(2, g), g, Mode::LittleO);
  c.index = 2;
  if (c.holds())
    c.reason = "s_{2n}/s_n -> 0 (" + c.reason + ")";
  else
    c.reason = "s_{2n}/s_n bounded away from 0" + (c.limit ? ", tends to " + c.limit->str() : std::string());
  return c;
}

/// I^2 = I.
inline Verdict is_idempotent(const IdealExpr& ideal) {
  IdealExpr I = make_ideal(ideal);
  Verdict v;
  v.method = Method::SymbolicProven;
  switch (I.kind()) {
    case IdealExpr::Kind::FiniteRank:
    case IdealExpr::Kind::Compact:
      v.status = Status::Holds;
      v.reason = I.kind() == IdealExpr::Kind::Compact ? "K^2 = K" : "F^2 = F";
      return v;
    case IdealExpr::Kind::Principal: {
      const SequenceExpr& g = I.generator();
      Verdict m = member(g, IdealExpr::principal(SequenceExpr::product(g, g)));
      m.reason = (m.holds() ? "generator lies in (gen^2): " : "generator not in (gen^2): ") + m.reason;
      return m;
    }
    case IdealExpr::Kind::Product:
      break;
  }
  if (I.right().kind() == IdealExpr::Kind::FiniteRank) {
    v.status = Status::Holds;
    v.reason = "product with F is F";
    return v;
  }
  // ((g)K)^2 = (g^2)K; equal to (g)K exactly when g has geometric decay.
  const SequenceExpr& g = I.left().generator();
  AsymSig s = signature_of(g);
  v.signatures = {s};
  if (!s.rate.is_one()) {
    v.status = Status::Holds;
    v.reason = "(g) is idempotent, so ((g)K)^2 = (g)^2 K^2 = (g)K";
  } else {
    v.status = Status::Fails;
    SequenceExpr w = SequenceExpr::product(g, SequenceExpr::power_log(s.pow / 2, s.logpow / 2));
    v.reason = "witness " + to_dsl(w) + " lies in (g)K but not in (g^2)K";
  }
  return v;
}

/// s = o(D_m s) for some m >= 2; m = 2 decides symbolically.
inline Verdict necessary_soft_condition(const SequenceExpr& x) {
  require_valid(x);
  if (detail::finite_support(x)) throw DomainError("necessary softness condition requires infinite support");
  Verdict v = compare(x, ampliate(2, x), Mode::LittleO);
  v.index = 2;
  return v;
}

struct ImplicationReport {
  SequenceExpr sequence;
  Verdict delta2, soft, idempotent, necessary;
  bool delta2_excludes_soft = true;     // Delta2 => not soft
  bool idempotent_implies_soft = true;  // idempotent => soft
  bool soft_implies_necessary = true;   // soft => s = o(D_m s)
};

/// The four verdicts for Principal(x) and the implications tying them together.
/// A violated implication is a bug and throws InternalInconsistency.
inline ImplicationReport implication_report(const SequenceExpr& x) {
  require_valid(x);
  if (detail::finite_support(x)) throw DomainError("implication report requires infinite support");
  IdealExpr I = IdealExpr::principal(x);
  ImplicationReport r{x, delta2_check(x), is_soft(I), is_idempotent(I), necessary_soft_condition(x)};
  r.delta2_excludes_soft = !(r.delta2.holds() && r.soft.holds());
  r.idempotent_implies_soft = !(r.idempotent.holds() && !r.soft.holds());
  r.soft_implies_necessary = !(r.soft.holds() && !r.necessary.holds());
  if (!r.delta2_excludes_soft || !r.idempotent_implies_soft || !r.soft_implies_necessary)
    throw InternalInconsistency("implication chain violated for " + to_dsl(x));
  return r;
}

}  // namespace idealkit
