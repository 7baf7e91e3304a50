#pragma once

// Exact linear algebra over Q: incremental reduced echelon forms, coordinate
// solving, kernels (dense and sparse), and univariate polynomials.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "idealkit/matrix.hpp"
#include "idealkit/rational.hpp"

namespace idealkit {

using Vec = std::vector<Rational>;

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

/// Subspace of Q^n held in fully reduced row echelon form. The basis is therefore
/// canonical: two Echelons span the same space iff rows() compare equal.
class Echelon {
 public:
  explicit Echelon(std::size_t n = 0) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after subtracting its projection along the pivot columns.
  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational c = v[pivots_[r]];
      if (sgn(c) == 0) continue;
      const Vec& row = rows_[r];
      for (std::size_t j = pivots_[r]; j < n_; ++j)
        if (sgn(row[j]) != 0) v[j] -= c * row[j];
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  /// Adds v to the span; returns false when it was already inside.
  bool insert(const Vec& v) {
    Vec w = reduce(v);
    auto it = std::find_if(w.begin(), w.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (it == w.end()) return false;
    std::size_t p = static_cast<std::size_t>(it - w.begin());
    Rational inv = 1 / w[p];
    for (std::size_t j = p; j < n_; ++j)
      if (sgn(w[j]) != 0) w[j] *= inv;
    for (auto& row : rows_) {
      Rational c = row[p];
      if (sgn(c) == 0) continue;
      for (std::size_t j = p; j < n_; ++j)
        if (sgn(w[j]) != 0) row[j] -= c * w[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
  }

  friend bool operator==(const Echelon& a, const Echelon& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Expresses vectors in terms of a fixed generator list g_0..g_{k-1}:
/// v = residual + sum_i coeff_i g_i, with residual = 0 iff v lies in the span.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  explicit CoordinateSolver(const std::vector<Vec>& generators)
      : n_(generators.empty() ? 0 : generators.front().size()), k_(generators.size()) {
    for (std::size_t i = 0; i < k_; ++i) add(generators[i], unit_vec(k_, i));
  }

  std::size_t rank() const { return rows_.size(); }

  struct Result {
    Vec residual;
    Vec coeffs;
  };

  Result solve(Vec v) const {
    Vec coeffs(k_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational c = v[pivots_[r]];
      if (sgn(c) == 0) continue;
      const Vec& row = rows_[r];
      for (std::size_t j = pivots_[r]; j < n_; ++j)
        if (sgn(row[j]) != 0) v[j] -= c * row[j];
      const Vec& combo = combos_[r];
      for (std::size_t i = 0; i < k_; ++i)
        if (sgn(combo[i]) != 0) coeffs[i] += c * combo[i];
    }
    return {std::move(v), std::move(coeffs)};
  }

 private:
  void add(const Vec& v, Vec combo) {
    Vec w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational c = w[pivots_[r]];
      if (sgn(c) == 0) continue;
      for (std::size_t j = pivots_[r]; j < n_; ++j)
        if (sgn(rows_[r][j]) != 0) w[j] -= c * rows_[r][j];
      for (std::size_t i = 0; i < k_; ++i)
        if (sgn(combos_[r][i]) != 0) combo[i] -= c * combos_[r][i];
    }
    auto it = std::find_if(w.begin(), w.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (it == w.end()) return;  // dependent generator
    std::size_t p = static_cast<std::size_t>(it - w.begin());
    Rational inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (auto& x : combo) x *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational c = rows_[r][p];
      if (sgn(c) == 0) continue;
      for (std::size_t j = p; j < n_; ++j) rows_[r][j] -= c * w[j];
      for (std::size_t i = 0; i < k_; ++i) combos_[r][i] -= c * combo[i];
    }
    rows_.push_back(std::move(w));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
  }

  std::size_t n_ = 0, k_ = 0;
  std::vector<Vec> rows_, combos_;
  std::vector<std::size_t> pivots_;
};

/// Kernel of a dense matrix given by rows; returned in canonical echelon form.
inline Echelon kernel(const std::vector<Vec>& rows, std::size_t ncols) {
  Echelon rref(ncols);
  for (const auto& r : rows) rref.insert(r);
  const auto& piv = rref.pivots();
  Echelon out(ncols);
  std::size_t next = 0;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (next < piv.size() && piv[next] == free) {
      ++next;
      continue;
    }
    Vec v(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -rref.rows()[r][free];
    out.insert(v);
  }
  return out;
}

inline Echelon kernel(const RationalMatrix& m) {
  std::vector<Vec> rows(m.rows(), Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return kernel(rows, m.cols());
}

inline std::size_t rank(const RationalMatrix& m) {
  Echelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    e.insert(r);
  }
  return e.dim();
}

/// Kernel of a large sparse system fed one equation at a time. Rows are kept as
/// sorted (column, value) lists; elimination is Gaussian with pivot = leading column.
class SparseKernel {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Rational>>;

  explicit SparseKernel(std::size_t ncols) : n_(ncols) {}

  void add_equation(Row row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    row = compact(std::move(row));
    while (!row.empty()) {
      auto it = pivot_rows_.find(row.front().first);
      if (it == pivot_rows_.end()) break;
      row = axpy(row, it->second, -row.front().second);
    }
    if (row.empty()) return;
    Rational inv = 1 / row.front().second;
    for (auto& [c, x] : row) x *= inv;
    pivot_rows_.emplace(row.front().first, std::move(row));
  }

  std::size_t rank() const { return pivot_rows_.size(); }

  /// Back-substitutes and returns the kernel basis in canonical echelon form.
  Echelon solve() const {
    // Reduce each pivot row by later pivots, last pivot first.
    std::map<std::uint32_t, Row> reduced;
    for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
      Row row = it->second;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 1; i < row.size(); ++i) {
          auto r = reduced.find(row[i].first);
          if (r == reduced.end()) continue;
          row = axpy(row, r->second, -row[i].second);
          changed = true;
          break;
        }
      }
      reduced.emplace(it->first, std::move(row));
    }
    Echelon out(n_);
    for (std::uint32_t free = 0; free < n_; ++free) {
      if (reduced.count(free)) continue;
      Vec v(n_);
      v[free] = 1;
      for (const auto& [p, row] : reduced)
        for (const auto& [c, x] : row)
          if (c == free) v[p] = -x;
      out.insert(v);
    }
    return out;
  }

 private:
  static Row compact(Row row) {
    Row out;
    for (auto& e : row) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return sgn(e.second) == 0; }), out.end());
    return out;
  }

  // a + c * b
  static Row axpy(const Row& a, const Row& b, const Rational& c) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, c * b[j].second);
        ++j;
      } else {
        Rational s = a[i].second + c * b[j].second;
        if (sgn(s) != 0) out.emplace_back(a[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::size_t n_;
  std::map<std::uint32_t, Row> pivot_rows_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, coefficients low degree first.

using Poly = std::vector<Rational>;

inline Poly trim(Poly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<unsigned long>(i)));
  return trim(d);
}

/// Quotient and remainder of a / b (b nonzero).
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  a = trim(std::move(a));
  Poly bt = trim(b);
  if (bt.empty()) throw DomainError("polynomial division by zero");
  if (a.size() < bt.size()) return {Poly{}, a};
  Poly q(a.size() - bt.size() + 1);
  while (a.size() >= bt.size() && !a.empty()) {
    std::size_t shift = a.size() - bt.size();
    Rational c = a.back() / bt.back();
    q[shift] = c;
    for (std::size_t i = 0; i < bt.size(); ++i) a[shift + i] -= c * bt[i];
    a = trim(std::move(a));
  }
  return {trim(q), a};
}

inline Poly monic(Poly p) {
  p = trim(std::move(p));
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline RationalMatrix evaluate(const Poly& p, const RationalMatrix& m) {
  RationalMatrix acc(m.rows(), m.cols());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * m + *it * RationalMatrix::identity(m.rows());
  return acc;
}

/// Rational roots via the rational root theorem. Gives up (returns nullopt) when a
/// coefficient is too large to enumerate divisors by trial division.
inline std::optional<std::vector<Rational>> rational_roots(const Poly& p_in) {
  Poly p = trim(p_in);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  while (!p.empty() && sgn(p.front()) == 0) {
    if (roots.empty() || roots.back() != 0) roots.push_back(0);
    p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ic;
  for (const auto& c : p) ic.push_back(mpz_class(c * l));
  auto divisors = [](mpz_class v) -> std::optional<std::vector<mpz_class>> {
    v = abs(v);
    if (v > mpz_class(1000000000000L)) return std::nullopt;
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        out.push_back(d);
        if (d * d != v) out.push_back(v / d);
      }
    return out;
  };
  auto num = divisors(ic.front());
  auto den = divisors(ic.back());
  if (!num || !den) return std::nullopt;
  std::vector<Rational> cand;
  for (const auto& a : *num)
    for (const auto& b : *den)
      for (int s : {1, -1}) {
        Rational r(a * s, b);
        r.canonicalize();
        cand.push_back(r);
      }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (const auto& r : cand)
    if (sgn(evaluate(p, r)) == 0) roots.push_back(r);
  return roots;
}

}  // namespace idealkit
