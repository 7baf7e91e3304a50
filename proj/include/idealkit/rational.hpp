#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "idealkit/error.hpp"

namespace idealkit {

using Rational = mpq_class;

/// Canonical text form: "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p", "p/q", or a plain decimal like "-0.125". Throws InputError.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational");
  auto digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = s;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw InputError("malformed rational '" + s + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + s + "'");
    out = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw InputError("malformed decimal '" + s + "'");
    mpz_class w{whole.empty() ? std::string("0") : std::string(whole)};
    mpz_class f{frac.empty() ? std::string("0") : std::string(frac)};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(w * scale + f, scale);
  } else {
    if (!digits(body)) throw InputError("malformed rational '" + s + "'");
    out = Rational(mpz_class{std::string(body)});
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

inline Rational pow_ui(const Rational& base, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

inline long double log_abs(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mant))) +
         static_cast<long double>(exp) * std::log(2.0L);
}

/// Natural log of a positive rational, accurate even when it under/overflows a double.
inline long double log_of(const Rational& q) {
  if (sgn(q) <= 0) return -INFINITY;
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

inline long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  long double mag = std::exp(log_abs(q.get_num()) - log_abs(q.get_den()));
  return sgn(q) < 0 ? -mag : mag;
}

/// A positive real of the form c * prod p_i^{e_i} with c rational, p_i prime and
/// e_i rational in (0, 1). The form is canonical, so equality is structural.
/// Limiting ratios of polynomially-decaying sequences live here, e.g. 2^p or m^{-p}.
class AlgebraicConstant {
 public:
  AlgebraicConstant() : coeff_(1) {}
  explicit AlgebraicConstant(Rational c) : coeff_(std::move(c)) {}

  /// base^exponent for a positive integer base.
  static AlgebraicConstant power(std::uint64_t base, const Rational& exponent) {
    AlgebraicConstant out;
    std::uint64_t b = base;
    for (std::uint64_t p = 2; p * p <= b; ++p) {
      std::uint64_t mult = 0;
      while (b % p == 0) {
        b /= p;
        ++mult;
      }
      if (mult) out.add_prime_power(p, exponent * Rational(static_cast<unsigned long>(mult)));
    }
    if (b > 1) out.add_prime_power(b, exponent);
    return out;
  }

  const Rational& coefficient() const { return coeff_; }
  const std::map<std::uint64_t, Rational>& radicals() const { return radicals_; }
  bool is_rational() const { return radicals_.empty(); }

  AlgebraicConstant operator*(const AlgebraicConstant& o) const {
    AlgebraicConstant out = *this;
    out.coeff_ *= o.coeff_;
    for (const auto& [p, e] : o.radicals_) out.add_prime_power(p, e);
    return out;
  }
  AlgebraicConstant inverse() const {
    AlgebraicConstant out(1 / coeff_);
    for (const auto& [p, e] : radicals_) out.add_prime_power(p, -e);
    return out;
  }
  AlgebraicConstant operator/(const AlgebraicConstant& o) const { return *this * o.inverse(); }
  bool operator==(const AlgebraicConstant& o) const {
    return coeff_ == o.coeff_ && radicals_ == o.radicals_;
  }

  long double approx() const {
    long double v = log_of(coeff_);
    for (const auto& [p, e] : radicals_)
      v += to_long_double(e) * std::log(static_cast<long double>(p));
    return std::exp(v);
  }

  std::string str() const {
    if (radicals_.empty()) return to_string(coeff_);
    std::ostringstream os;
    bool first = true;
    if (coeff_ != 1) {
      os << to_string(coeff_);
      first = false;
    }
    for (const auto& [p, e] : radicals_) {
      if (!first) os << "*";
      os << p << "^(" << to_string(e) << ")";
      first = false;
    }
    return os.str();
  }

 private:
  void add_prime_power(std::uint64_t p, const Rational& e) {
    Rational total = e;
    if (auto it = radicals_.find(p); it != radicals_.end()) {
      total += it->second;
      radicals_.erase(it);
    }
    // Fold the integer part of the exponent into the coefficient.
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
    Rational frac = total - Rational(whole);
    Rational factor = pow_ui(Rational(static_cast<unsigned long>(p)), mpz_class(abs(whole)).get_ui());
    if (whole >= 0)
      coeff_ *= factor;
    else
      coeff_ /= factor;
    if (frac != 0) radicals_.emplace(p, frac);
  }

  Rational coeff_;
  std::map<std::uint64_t, Rational> radicals_;
};

}  // namespace idealkit
