#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's evaluators, signature code or Lie algebra constructors.

#include <cstdint>
#include <string>
#include <vector>

#include "idealkit/linalg.hpp"
#include "idealkit/matrix.hpp"
#include "idealkit/rational.hpp"
#include "idealkit/seq_dsl.hpp"

namespace oracle {

using idealkit::Rational;
using idealkit::RationalMatrix;

inline Rational pow_int(const Rational& base, std::uint64_t e) {
  Rational acc = 1;
  for (std::uint64_t i = 0; i < e; ++i) acc *= base;
  return acc;
}

/// n^{-p} for integer p.
inline Rational power_seq(std::uint64_t p, std::uint64_t n) { return 1 / pow_int(Rational(n), p); }

/// r^n.
inline Rational geometric_seq(const Rational& r, std::uint64_t n) { return pow_int(r, n); }

/// ceil(n / m).
inline std::uint64_t ceil_div(std::uint64_t n, std::uint64_t m) { return (n + m - 1) / m; }

/// Shorthand: parse a DSL string that the test knows is valid.
inline idealkit::SequenceExpr seq(const std::string& dsl) { return idealkit::parse_seq_dsl(dsl); }

/// Catalog battery with infinite support, spanning every constructor.
inline std::vector<std::string> battery() {
  return {"pow:1",
          "pow:2",
          "pow:1/2",
          "pow:3",
          "exp:1/2",
          "exp:9/10",
          "exp:1/3",
          "powlog:1,1",
          "powlog:0,1",
          "powlog:2,-1",
          "scale:7;pow:2",
          "scale:1/3;exp:1/2",
          "amp:2;pow:1",
          "amp:3;exp:1/8",
          "amp:5;pow:2",
          "prod(pow:1,exp:1/2)",
          "prod(pow:1,pow:1)",
          "prod(powlog:1,1,pow:1)",
          "explicit:[1,1/2];tail=pow:3",
          "explicit:[5,4,3];tail=exp:1/2",
          "sub:2;pow:1",
          "sub:3;exp:1/2",
          "amp:2;prod(pow:1,exp:9/10)"};
}

/// Battery members of polynomial class (rate 1) and geometric class (rate < 1).
inline bool polynomial_class(const std::string& dsl) {
  return dsl.find("exp:") == std::string::npos;
}

// ---------------------------------------------------------------------------
// Lie algebra oracles: dimensions of solution spaces of linear constraint systems,
// computed from the constraints directly.

/// dim {X in M_{2N} : X^T J + J X = 0}, J = [[0, I], [-I, 0]].
inline std::size_t symplectic_dim_by_constraints(std::size_t n) {
  const std::size_t a = 2 * n;
  RationalMatrix j(a, a);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  idealkit::Echelon e(a * a);
  // Entry (r, c) of X^T J + J X as a linear form in the a*a unknowns x_{kl}.
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t c = 0; c < a; ++c) {
      idealkit::Vec eq(a * a);
      for (std::size_t k = 0; k < a; ++k) {
        eq[k * a + r] += j(k, c);  // (X^T)_{rk} J_{kc} = x_{kr} J_{kc}
        eq[k * a + c] += j(r, k);  // J_{rk} x_{kc}
      }
      e.insert(eq);
    }
  return a * a - e.dim();
}

/// dim of block matrices with B = B^T, C = -C^T, D = -A^T.
inline std::size_t literal_dim_by_constraints(std::size_t n) {
  const std::size_t a = 2 * n;
  auto idx = [a](std::size_t r, std::size_t c) { return r * a + c; };
  idealkit::Echelon e(a * a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      idealkit::Vec b(a * a), c(a * a), d(a * a);
      b[idx(i, n + j)] += 1;  // B_ij - B_ji
      b[idx(j, n + i)] -= 1;
      c[idx(n + i, j)] += 1;  // C_ij + C_ji
      c[idx(n + j, i)] += 1;
      d[idx(n + i, n + j)] += 1;  // D_ij + A_ji
      d[idx(j, i)] += 1;
      e.insert(b);
      e.insert(c);
      e.insert(d);
    }
  return a * a - e.dim();
}

inline Rational trace_product(const RationalMatrix& x, const RationalMatrix& y) { return (x * y).trace(); }

/// Random integer-entry matrix from a simple LCG (deterministic, no library RNG).
inline RationalMatrix lcg_matrix(std::size_t n, std::uint64_t& state) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      m(i, j) = static_cast<long>((state >> 33) % 11) - 5;
    }
  return m;
}

}  // namespace oracle
