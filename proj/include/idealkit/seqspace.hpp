#pragma once

// Symbolic model of nonincreasing null sequences (the characteristic-set side of
// the Calkin correspondence) together with exact asymptotic decision procedures.
//
// Every expression has an asymptotic signature (rate, pow, logpow) meaning
//   xi_n ~ rate^n * n^{-pow} * (ln n)^{-logpow}
// up to bounded factors, or ZeroTail when the sequence is eventually zero.
// O/o questions inside the catalog reduce to comparing signatures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "idealkit/error.hpp"
#include "idealkit/rational.hpp"

namespace idealkit {

class SequenceExpr;

namespace node {
struct Pow;
struct Exp;
struct PowLog;
struct Explicit;
struct FiniteSupport;
struct Scale;
struct Ampliation;
struct Subsample;
struct Product;
}  // namespace node

namespace detail {
struct Node;
}

/// Immutable symbolic sequence. Cheap to copy (shared structure).
class SequenceExpr {
 public:
  static SequenceExpr power(Rational p);
  static SequenceExpr geometric(Rational r);
  static SequenceExpr power_log(Rational p, Rational q);
  static SequenceExpr explicit_prefix(std::vector<Rational> prefix, SequenceExpr tail);
  static SequenceExpr finite(std::vector<Rational> values);
  static SequenceExpr scaled(Rational c, SequenceExpr inner);
  static SequenceExpr ampliation(std::uint64_t m, SequenceExpr inner);
  static SequenceExpr subsampled(std::uint64_t k, SequenceExpr inner);
  static SequenceExpr product(SequenceExpr left, SequenceExpr right);

  const detail::Node& node() const { return *node_; }

  template <typename Visitor>
  decltype(auto) visit(Visitor&& v) const;

  template <typename T>
  const T* as() const;

 private:
  explicit SequenceExpr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

namespace node {
struct Pow {
  Rational p;
};
struct Exp {
  Rational r;
};
/// raw_n = n^{-p} (ln(n+1))^{-q}, stored under a running minimum.
struct PowLog {
  Rational p, q;
};
struct Explicit {
  std::vector<Rational> prefix;
  SequenceExpr tail;
};
struct FiniteSupport {
  std::vector<Rational> values;
};
struct Scale {
  Rational c;
  SequenceExpr inner;
};
struct Ampliation {
  std::uint64_t m;
  SequenceExpr inner;
};
struct Subsample {
  std::uint64_t k;
  SequenceExpr inner;
};
struct Product {
  SequenceExpr left, right;
};
}  // namespace node

namespace detail {
struct Node {
  std::variant<node::Pow, node::Exp, node::PowLog, node::Explicit, node::FiniteSupport, node::Scale,
               node::Ampliation, node::Subsample, node::Product>
      v;
};
}  // namespace detail

template <typename Visitor>
decltype(auto) SequenceExpr::visit(Visitor&& v) const {
  return std::visit(std::forward<Visitor>(v), node_->v);
}

template <typename T>
const T* SequenceExpr::as() const {
  return std::get_if<T>(&node_->v);
}

inline SequenceExpr SequenceExpr::power(Rational p) {
  return SequenceExpr(std::make_shared<const detail::Node>(detail::Node{node::Pow{std::move(p)}}));
}
inline SequenceExpr SequenceExpr::geometric(Rational r) {
  return SequenceExpr(std::make_shared<const detail::Node>(detail::Node{node::Exp{std::move(r)}}));
}
inline SequenceExpr SequenceExpr::power_log(Rational p, Rational q) {
  return SequenceExpr(
      std::make_shared<const detail::Node>(detail::Node{node::PowLog{std::move(p), std::move(q)}}));
}
inline SequenceExpr SequenceExpr::explicit_prefix(std::vector<Rational> prefix, SequenceExpr tail) {
  return SequenceExpr(std::make_shared<const detail::Node>(
      detail::Node{node::Explicit{std::move(prefix), std::move(tail)}}));
}
inline SequenceExpr SequenceExpr::finite(std::vector<Rational> values) {
  return SequenceExpr(
      std::make_shared<const detail::Node>(detail::Node{node::FiniteSupport{std::move(values)}}));
}
inline SequenceExpr SequenceExpr::scaled(Rational c, SequenceExpr inner) {
  return SequenceExpr(
      std::make_shared<const detail::Node>(detail::Node{node::Scale{std::move(c), std::move(inner)}}));
}
inline SequenceExpr SequenceExpr::ampliation(std::uint64_t m, SequenceExpr inner) {
  return SequenceExpr(
      std::make_shared<const detail::Node>(detail::Node{node::Ampliation{m, std::move(inner)}}));
}
inline SequenceExpr SequenceExpr::subsampled(std::uint64_t k, SequenceExpr inner) {
  return SequenceExpr(
      std::make_shared<const detail::Node>(detail::Node{node::Subsample{k, std::move(inner)}}));
}
inline SequenceExpr SequenceExpr::product(SequenceExpr left, SequenceExpr right) {
  return SequenceExpr(std::make_shared<const detail::Node>(
      detail::Node{node::Product{std::move(left), std::move(right)}}));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Printing (the DSL grammar is shared with the parser in seq_dsl.hpp)

inline std::string to_dsl(const SequenceExpr& s) {
  auto list = [](const std::vector<Rational>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ",";
      out += to_string(xs[i]);
    }
    return out + "]";
  };
  return s.visit(overloaded{
      [](const node::Pow& n) { return "pow:" + to_string(n.p); },
      [](const node::Exp& n) { return "exp:" + to_string(n.r); },
      [](const node::PowLog& n) { return "powlog:" + to_string(n.p) + "," + to_string(n.q); },
      [&](const node::Explicit& n) { return "explicit:" + list(n.prefix) + ";tail=" + to_dsl(n.tail); },
      [&](const node::FiniteSupport& n) { return "finite:" + list(n.values); },
      [](const node::Scale& n) { return "scale:" + to_string(n.c) + ";" + to_dsl(n.inner); },
      [](const node::Ampliation& n) { return "amp:" + std::to_string(n.m) + ";" + to_dsl(n.inner); },
      [](const node::Subsample& n) { return "sub:" + std::to_string(n.k) + ";" + to_dsl(n.inner); },
      [](const node::Product& n) { return "prod(" + to_dsl(n.left) + "," + to_dsl(n.right) + ")"; },
  });
}

/// Structural equality; the DSL printer is canonical for rationals.
inline bool operator==(const SequenceExpr& a, const SequenceExpr& b) { return to_dsl(a) == to_dsl(b); }

// ---------------------------------------------------------------------------
// Values

/// An entry of a sequence: exact when every ingredient is rational, a double otherwise.
class SeqValue {
 public:
  SeqValue(Rational q) : v_(std::move(q)) {}
  SeqValue(double x) : v_(x) {}

  bool exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  double approx() const { return exact() ? rational().get_d() : std::get<double>(v_); }
  bool is_zero() const { return exact() ? sgn(rational()) == 0 : std::get<double>(v_) == 0.0; }

  std::string str() const {
    if (exact()) return to_string(rational());
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(v_);
    return os.str();
  }

  friend SeqValue operator*(const SeqValue& a, const SeqValue& b) {
    if (a.exact() && b.exact()) return SeqValue(Rational(a.rational() * b.rational()));
    return SeqValue(a.approx() * b.approx());
  }
  friend SeqValue operator-(const SeqValue& a, const SeqValue& b) {
    if (a.exact() && b.exact()) return SeqValue(Rational(a.rational() - b.rational()));
    return SeqValue(a.approx() - b.approx());
  }
  friend bool operator<(const SeqValue& a, const SeqValue& b) {
    if (a.exact() && b.exact()) return a.rational() < b.rational();
    return a.approx() < b.approx();
  }
  friend bool operator==(const SeqValue& a, const SeqValue& b) {
    if (a.exact() && b.exact()) return a.rational() == b.rational();
    return a.approx() == b.approx();
  }

 private:
  std::variant<Rational, double> v_;
};

namespace detail {
inline long double powlog_raw_log(const node::PowLog& n, std::uint64_t i) {
  long double x = static_cast<long double>(i);
  return -to_long_double(n.p) * std::log(x) -
         (sgn(n.q) == 0 ? 0.0L : to_long_double(n.q) * std::log(std::log1p(x)));
}

// Running minimum of raw_n. The raw form is unimodal on [1, inf) (increasing then
// decreasing), so the minimum over [1, n] sits at an endpoint.
inline long double powlog_log(const node::PowLog& n, std::uint64_t i) {
  return std::min(powlog_raw_log(n, 1), powlog_raw_log(n, i));
}
}  // namespace detail

/// xi_n for n >= 1. Exact for rational-power/geometric/finite ingredients,
/// double (relative error ~1e-15) for PowLog and fractional powers.
inline SeqValue eval(const SequenceExpr& s, std::uint64_t n) {
  if (n == 0) throw DomainError("sequence index must be >= 1");
  return s.visit(overloaded{
      [n](const node::Pow& x) -> SeqValue {
        if (is_integer(x.p) && x.p.get_num().fits_ulong_p())
          return SeqValue(Rational(1) / pow_ui(Rational(static_cast<unsigned long>(n)), x.p.get_num().get_ui()));
        return SeqValue(std::pow(static_cast<double>(n), -x.p.get_d()));
      },
      [n](const node::Exp& x) -> SeqValue { return SeqValue(pow_ui(x.r, n)); },
      [n](const node::PowLog& x) -> SeqValue {
        return SeqValue(static_cast<double>(std::exp(detail::powlog_log(x, n))));
      },
      [n](const node::Explicit& x) -> SeqValue {
        if (n <= x.prefix.size()) return SeqValue(x.prefix[n - 1]);
        SeqValue t = eval(x.tail, n - x.prefix.size());
        if (x.prefix.empty()) return t;
        SeqValue last(x.prefix.back());
        return last < t ? last : t;
      },
      [n](const node::FiniteSupport& x) -> SeqValue {
        return n <= x.values.size() ? SeqValue(x.values[n - 1]) : SeqValue(Rational(0));
      },
      [n](const node::Scale& x) -> SeqValue { return SeqValue(x.c) * eval(x.inner, n); },
      [n](const node::Ampliation& x) -> SeqValue { return eval(x.inner, (n + x.m - 1) / x.m); },
      [n](const node::Subsample& x) -> SeqValue { return eval(x.inner, n * x.k); },
      [n](const node::Product& x) -> SeqValue { return eval(x.left, n) * eval(x.right, n); },
  });
}

/// ln(xi_n), or -inf when xi_n = 0. Used by the numeric probe; never under/overflows.
inline long double log_eval(const SequenceExpr& s, std::uint64_t n) {
  return s.visit(overloaded{
      [n](const node::Pow& x) -> long double {
        return -to_long_double(x.p) * std::log(static_cast<long double>(n));
      },
      [n](const node::Exp& x) -> long double { return static_cast<long double>(n) * log_of(x.r); },
      [n](const node::PowLog& x) -> long double { return detail::powlog_log(x, n); },
      [n](const node::Explicit& x) -> long double {
        if (n <= x.prefix.size()) return log_of(x.prefix[n - 1]);
        long double t = log_eval(x.tail, n - x.prefix.size());
        if (x.prefix.empty()) return t;
        return std::min(log_of(x.prefix.back()), t);
      },
      [n](const node::FiniteSupport& x) -> long double {
        return n <= x.values.size() ? log_of(x.values[n - 1]) : -INFINITY;
      },
      [n](const node::Scale& x) -> long double { return log_of(x.c) + log_eval(x.inner, n); },
      [n](const node::Ampliation& x) -> long double { return log_eval(x.inner, (n + x.m - 1) / x.m); },
      [n](const node::Subsample& x) -> long double { return log_eval(x.inner, n * x.k); },
      [n](const node::Product& x) -> long double {
        long double a = log_eval(x.left, n), b = log_eval(x.right, n);
        if (std::isinf(a) || std::isinf(b)) return -INFINITY;
        return a + b;
      },
  });
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Status { Holds, Fails, Unknown };
enum class Method { SymbolicProven, NumericIndicated };
enum class Mode { BigO, LittleO };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    default: return "Unknown";
  }
}
inline const char* to_string(Method m) {
  return m == Method::SymbolicProven ? "SymbolicProven" : "NumericIndicated";
}
inline const char* to_string(Mode m) { return m == Mode::BigO ? "BigO" : "LittleO"; }

/// rate = base^{1/root}, base rational in (0, 1]. Never approximated.
struct Rate {
  Rational base{1};
  std::uint64_t root{1};

  bool is_one() const { return base == 1; }
  std::string str() const {
    if (root == 1) return to_string(base);
    return "(" + to_string(base) + ")^(1/" + std::to_string(root) + ")";
  }
};

/// Sign of (a - b), decided by raising both to the common root index.
inline int compare_rates(const Rate& a, const Rate& b) {
  Rational lhs = pow_ui(a.base, b.root);
  Rational rhs = pow_ui(b.base, a.root);
  return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

inline Rate canonical(Rate r) {
  if (r.base == 1) r.root = 1;
  return r;
}
inline Rate rate_product(const Rate& a, const Rate& b) {
  std::uint64_t l = std::lcm(a.root, b.root);
  return canonical({pow_ui(a.base, l / a.root) * pow_ui(b.base, l / b.root), l});
}
inline Rate rate_root(const Rate& a, std::uint64_t m) { return canonical({a.base, a.root * m}); }
inline Rate rate_power(const Rate& a, std::uint64_t k) {
  std::uint64_t g = std::gcd(k, a.root);
  return canonical({pow_ui(a.base, k / g), a.root / g});
}

struct AsymSig {
  bool zero_tail = false;
  std::uint64_t support = 0;  // number of nonzero entries, when zero_tail
  Rate rate;
  Rational pow{0};
  Rational logpow{0};

  static AsymSig zero(std::uint64_t support) {
    AsymSig s;
    s.zero_tail = true;
    s.support = support;
    return s;
  }
  static AsymSig triple(Rate r, Rational p, Rational q) {
    AsymSig s;
    s.rate = canonical(std::move(r));
    s.pow = std::move(p);
    s.logpow = std::move(q);
    return s;
  }

  std::string str() const {
    if (zero_tail) return "ZeroTail(support=" + std::to_string(support) + ")";
    return "(" + rate.str() + ", " + to_string(pow) + ", " + to_string(logpow) + ")";
  }
};

/// -1 if a decays strictly faster than b, 0 if same class, +1 if slower.
inline int decay_compare(const AsymSig& a, const AsymSig& b) {
  if (a.zero_tail || b.zero_tail) {
    if (a.zero_tail && b.zero_tail) return a.support < b.support ? -1 : (a.support > b.support ? 1 : 0);
    return a.zero_tail ? -1 : 1;
  }
  if (int c = compare_rates(a.rate, b.rate)) return c;
  if (int c = cmp(a.pow, b.pow)) return c > 0 ? -1 : 1;
  if (int c = cmp(a.logpow, b.logpow)) return c > 0 ? -1 : 1;
  return 0;
}

inline bool operator==(const AsymSig& a, const AsymSig& b) { return decay_compare(a, b) == 0; }

struct NumericEvidence {
  std::uint64_t n_max = 0;
  double eps = 0;
  std::size_t grid_points = 0;
  double final_ratio = 0;
  double log10_final_ratio = 0;
  double sup_ratio = 0;
  double log10_sup_ratio = 0;
  std::string trend;
  std::string note;
};

struct Verdict {
  Status status = Status::Unknown;
  Method method = Method::SymbolicProven;
  std::string reason;
  std::vector<AsymSig> signatures;
  /// Exact limiting ratio, when the compared ratio converges.
  std::optional<AlgebraicConstant> limit;
  /// Witness integer: ampliation m or subsample k.
  std::optional<std::uint64_t> index;
  std::optional<NumericEvidence> numeric;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
  bool proven() const { return method == Method::SymbolicProven && status != Status::Unknown; }
};

// ---------------------------------------------------------------------------
// Validation

namespace detail {
inline std::optional<std::string> check_list(const std::vector<Rational>& xs, const std::string& where) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (sgn(xs[i]) < 0) return where + "[" + std::to_string(i) + "]: negative entry " + to_string(xs[i]);
    if (i && xs[i] > xs[i - 1])
      return where + "[" + std::to_string(i) + "]: list increases (" + to_string(xs[i - 1]) + " < " +
             to_string(xs[i]) + ")";
  }
  return std::nullopt;
}

inline std::optional<std::string> first_violation(const SequenceExpr& s, const std::string& path) {
  return s.visit(overloaded{
      [&](const node::Pow& x) -> std::optional<std::string> {
        if (sgn(x.p) <= 0) return path + "pow: exponent must be > 0, got " + to_string(x.p);
        return std::nullopt;
      },
      [&](const node::Exp& x) -> std::optional<std::string> {
        if (sgn(x.r) <= 0 || x.r >= 1) return path + "exp: ratio must lie in (0,1), got " + to_string(x.r);
        return std::nullopt;
      },
      [&](const node::PowLog& x) -> std::optional<std::string> {
        if (sgn(x.p) < 0) return path + "powlog: power must be >= 0, got " + to_string(x.p);
        if (sgn(x.p) == 0 && sgn(x.q) <= 0)
          return path + "powlog: with power 0 the log power must be > 0, got " + to_string(x.q);
        return std::nullopt;
      },
      [&](const node::Explicit& x) -> std::optional<std::string> {
        if (auto e = check_list(x.prefix, path + "explicit.prefix")) return e;
        return first_violation(x.tail, path + "explicit.tail.");
      },
      [&](const node::FiniteSupport& x) -> std::optional<std::string> {
        return check_list(x.values, path + "finite");
      },
      [&](const node::Scale& x) -> std::optional<std::string> {
        if (sgn(x.c) <= 0) return path + "scale: factor must be > 0, got " + to_string(x.c);
        return first_violation(x.inner, path + "scale.");
      },
      [&](const node::Ampliation& x) -> std::optional<std::string> {
        if (x.m < 1) return path + "amp: multiplicity must be >= 1";
        return first_violation(x.inner, path + "amp.");
      },
      [&](const node::Subsample& x) -> std::optional<std::string> {
        if (x.k < 2) return path + "sub: step must be >= 2";
        return first_violation(x.inner, path + "sub.");
      },
      [&](const node::Product& x) -> std::optional<std::string> {
        if (auto e = first_violation(x.left, path + "prod.left.")) return e;
        return first_violation(x.right, path + "prod.right.");
      },
  });
}
}  // namespace detail

/// Holds iff every constructor constraint is satisfied; otherwise Fails naming
/// the first violated constraint with its location in the expression tree.
inline Verdict validate(const SequenceExpr& s) {
  Verdict v;
  if (auto e = detail::first_violation(s, "")) {
    v.status = Status::Fails;
    v.reason = *e;
  } else {
    v.status = Status::Holds;
    v.reason = "nonnegative, nonincreasing, tends to zero";
  }
  return v;
}

inline void require_valid(const SequenceExpr& s) {
  if (auto e = detail::first_violation(s, "")) throw InputError("invalid sequence " + to_dsl(s) + ": " + *e);
}

// ---------------------------------------------------------------------------
// Signatures

inline AsymSig signature_of(const SequenceExpr& s) {
  return s.visit(overloaded{
      [](const node::Pow& x) { return AsymSig::triple({}, x.p, 0); },
      [](const node::Exp& x) { return AsymSig::triple({x.r, 1}, 0, 0); },
      [](const node::PowLog& x) { return AsymSig::triple({}, x.p, x.q); },
      [](const node::Explicit& x) {
        if (!x.prefix.empty() && sgn(x.prefix.back()) == 0) {
          auto nz = std::count_if(x.prefix.begin(), x.prefix.end(), [](const Rational& q) { return sgn(q) != 0; });
          return AsymSig::zero(static_cast<std::uint64_t>(nz));
        }
        AsymSig t = signature_of(x.tail);
        if (t.zero_tail) return AsymSig::zero(x.prefix.size() + t.support);
        return t;
      },
      [](const node::FiniteSupport& x) {
        auto nz = std::count_if(x.values.begin(), x.values.end(), [](const Rational& q) { return sgn(q) != 0; });
        return AsymSig::zero(static_cast<std::uint64_t>(nz));
      },
      [](const node::Scale& x) { return signature_of(x.inner); },
      [](const node::Ampliation& x) {
        AsymSig t = signature_of(x.inner);
        if (t.zero_tail) return AsymSig::zero(t.support * x.m);
        return AsymSig::triple(rate_root(t.rate, x.m), t.pow, t.logpow);
      },
      [](const node::Subsample& x) {
        AsymSig t = signature_of(x.inner);
        if (t.zero_tail) return AsymSig::zero(t.support / x.k);
        return AsymSig::triple(rate_power(t.rate, x.k), t.pow, t.logpow);
      },
      [](const node::Product& x) {
        AsymSig a = signature_of(x.left), b = signature_of(x.right);
        if (a.zero_tail && b.zero_tail) return AsymSig::zero(std::min(a.support, b.support));
        if (a.zero_tail) return a;
        if (b.zero_tail) return b;
        return AsymSig::triple(rate_product(a.rate, b.rate), a.pow + b.pow, a.logpow + b.logpow);
      },
  });
}

/// For signatures with rate 1, the constant C with xi_n / (n^{-p} (ln n)^{-q}) -> C.
/// Sequences with rate < 1 or finite support have no such constant (ampliated
/// geometric sequences oscillate against rate^n).
inline std::optional<AlgebraicConstant> leading_constant(const SequenceExpr& s) {
  return s.visit(overloaded{
      [](const node::Pow&) -> std::optional<AlgebraicConstant> { return AlgebraicConstant(); },
      [](const node::Exp&) -> std::optional<AlgebraicConstant> { return std::nullopt; },
      [](const node::PowLog&) -> std::optional<AlgebraicConstant> { return AlgebraicConstant(); },
      [](const node::Explicit& x) -> std::optional<AlgebraicConstant> {
        if (!x.prefix.empty() && sgn(x.prefix.back()) == 0) return std::nullopt;
        return leading_constant(x.tail);  // shift n -> n - L does not change the constant
      },
      [](const node::FiniteSupport&) -> std::optional<AlgebraicConstant> { return std::nullopt; },
      [](const node::Scale& x) -> std::optional<AlgebraicConstant> {
        auto c = leading_constant(x.inner);
        if (!c) return std::nullopt;
        return AlgebraicConstant(x.c) * *c;
      },
      [](const node::Ampliation& x) -> std::optional<AlgebraicConstant> {
        // ceil(n/m)^{-p} ~ m^p n^{-p}
        auto c = leading_constant(x.inner);
        if (!c) return std::nullopt;
        return *c * AlgebraicConstant::power(x.m, signature_of(x.inner).pow);
      },
      [](const node::Subsample& x) -> std::optional<AlgebraicConstant> {
        auto c = leading_constant(x.inner);
        if (!c) return std::nullopt;
        return *c * AlgebraicConstant::power(x.k, -signature_of(x.inner).pow);
      },
      [](const node::Product& x) -> std::optional<AlgebraicConstant> {
        auto a = leading_constant(x.left), b = leading_constant(x.right);
        if (!a || !b) return std::nullopt;
        return *a * *b;
      },
  });
}

// ---------------------------------------------------------------------------
// Constructions

/// Canonical m-fold ampliation D_m: D_1 is the identity and nested ampliations fuse.
inline SequenceExpr ampliate(std::uint64_t m, const SequenceExpr& s) {
  if (m == 0) throw DomainError("ampliation multiplicity must be >= 1");
  if (m == 1) return s;
  if (auto a = s.as<node::Ampliation>()) return SequenceExpr::ampliation(m * a->m, a->inner);
  return SequenceExpr::ampliation(m, s);
}

/// n -> xi_{nk}.
inline SequenceExpr subsample(std::uint64_t k, const SequenceExpr& s) {
  if (k < 2) throw DomainError("subsample step must be >= 2");
  if (auto a = s.as<node::Subsample>()) return SequenceExpr::subsampled(k * a->k, a->inner);
  return SequenceExpr::subsampled(k, s);
}

// ---------------------------------------------------------------------------
// Decisions

/// Exact O/o comparison by signature. Within the catalog, equal signatures give a
/// ratio bounded above and below, so BigO holds and LittleO fails.
inline Verdict compare(const SequenceExpr& x, const SequenceExpr& y, Mode mode) {
  require_valid(x);
  require_valid(y);
  AsymSig sx = signature_of(x), sy = signature_of(y);
  Verdict v;
  v.method = Method::SymbolicProven;
  v.signatures = {sx, sy};

  if (sy.zero_tail) {
    if (sx.zero_tail && sx.support <= sy.support) {
      v.status = Status::Holds;
      v.reason = mode == Mode::BigO ? "support contained in the larger support; finitely many ratios"
                                    : "both eventually zero; ratio eventually 0";
    } else {
      v.status = Status::Fails;
      v.reason = "division by zero tail";
    }
    return v;
  }

  int c = decay_compare(sx, sy);
  if (c < 0) {
    v.status = Status::Holds;
    v.reason = "left decays strictly faster: " + sx.str() + " < " + sy.str();
    return v;
  }
  if (c > 0) {
    v.status = Status::Fails;
    v.reason = "left decays strictly slower: ratio unbounded";
    return v;
  }
  auto cx = leading_constant(x), cy = leading_constant(y);
  if (cx && cy) v.limit = *cx / *cy;
  if (mode == Mode::BigO) {
    v.status = Status::Holds;
    v.reason = "equal signatures " + sx.str() + "; ratio bounded";
  } else {
    v.status = Status::Fails;
    v.reason = "equal signatures " + sx.str() + "; ratio bounded away from 0";
    if (v.limit) v.reason += ", tends to " + v.limit->str();
  }
  return v;
}

/// sup_n xi_n / xi_{2n} < infinity.
inline Verdict delta2_check(const SequenceExpr& x) {
  require_valid(x);
  AsymSig s = signature_of(x);
  if (s.zero_tail) throw DomainError("Delta2 undefined for finite rank");
  Verdict v;
  v.method = Method::SymbolicProven;
  v.signatures = {s};
  v.index = 2;
  if (s.rate.is_one()) {
    v.status = Status::Holds;
    v.limit = AlgebraicConstant::power(2, s.pow);
    v.reason = "polynomial-class decay; xi_n/xi_2n -> 2^p = " + v.limit->str();
  } else {
    v.status = Status::Fails;
    v.reason = "geometric decay with rate " + s.rate.str() + "; xi_n/xi_2n ~ rate^{-n} unbounded";
  }
  return v;
}

struct ProbeOptions {
  std::uint64_t n_max = std::uint64_t{1} << 20;
  double eps = 1e-3;
};

/// Numeric corroboration of x = O(y) / x = o(y) on the grid 1, 2, 4, ..., n_max.
/// Never returns a SymbolicProven verdict.
inline Verdict numeric_probe(const SequenceExpr& x, const SequenceExpr& y, Mode mode,
                             ProbeOptions opt = {}) {
  if (opt.n_max < 1024) throw DomainError("numeric probe requires n_max >= 2^10");
  require_valid(x);
  require_valid(y);
  Verdict v;
  v.method = Method::NumericIndicated;
  NumericEvidence ev;
  ev.n_max = opt.n_max;
  ev.eps = opt.eps;

  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = 1; n <= opt.n_max; n *= 2) grid.push_back(n);
  if (grid.back() != opt.n_max) grid.push_back(opt.n_max);

  std::vector<long double> lr;  // log ratios
  std::size_t dropped = 0;
  bool infinite = false;
  for (auto n : grid) {
    long double a = log_eval(x, n), b = log_eval(y, n);
    if (std::isinf(b)) {
      if (std::isinf(a)) {
        ++dropped;  // 0/0 past both supports
        continue;
      }
      infinite = true;
      break;
    }
    lr.push_back(std::isinf(a) ? -INFINITY : a - b);
  }
  if (dropped) ev.note = "grid shrunk: " + std::to_string(dropped) + " points past both supports dropped";

  auto finish = [&](Status st, std::string why) {
    v.status = st;
    v.reason = std::move(why);
    v.numeric = ev;
    return v;
  };
  if (infinite) {
    ev.trend = "denominator vanishes where numerator does not";
    return finish(Status::Fails, "division by zero tail");
  }
  ev.grid_points = lr.size();
  if (lr.size() < 4) return finish(Status::Unknown, "too few grid points");

  const std::size_t mid = lr.size() / 2;
  const long double last = lr.back();
  long double sup = lr.front(), sup_mid = lr.front();
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sup = std::max(sup, lr[i]);
    if (i == mid) sup_mid = sup;
  }
  auto to_real = [](long double l) { return static_cast<double>(std::exp(l)); };
  auto to_log10 = [](long double l) { return std::isinf(l) ? -INFINITY : static_cast<double>(l / std::log(10.0L)); };
  ev.final_ratio = to_real(last);
  ev.log10_final_ratio = to_log10(last);
  ev.sup_ratio = to_real(sup);
  ev.log10_sup_ratio = to_log10(sup);

  bool nonincreasing = true, nondecreasing = true;
  for (std::size_t i = mid; i + 1 < lr.size(); ++i) {
    if (lr[i + 1] > lr[i] + 1e-12L) nonincreasing = false;
    if (lr[i + 1] < lr[i] - 1e-12L) nondecreasing = false;
  }
  ev.trend = nonincreasing && nondecreasing ? "constant over last half"
             : nonincreasing                ? "nonincreasing over last half"
             : nondecreasing                ? "nondecreasing over last half"
                                            : "oscillating over last half";

  if (mode == Mode::LittleO) {
    if (nonincreasing && ev.final_ratio < opt.eps) return finish(Status::Holds, "ratio decreasing and below eps");
    if (ev.final_ratio >= opt.eps && last >= lr[mid] + std::log1p(-static_cast<long double>(opt.eps)))
      return finish(Status::Fails, "ratio does not decrease over the last half of the grid");
    return finish(Status::Unknown, "ratio trend inconclusive");
  }
  long double growth = sup - sup_mid;
  if (std::expm1(growth) < opt.eps) return finish(Status::Holds, "running sup stable over last half");
  if (growth >= std::log(1.5L) && last >= lr[lr.size() - 2])
    return finish(Status::Fails, "running sup still growing at n_max");
  return finish(Status::Unknown, "running sup growth inconclusive");
}

}  // namespace idealkit
