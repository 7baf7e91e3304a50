#pragma once

// Finite-dimensional Lie algebras of rational matrices: small worked examples
// (symplectic, triangular, sl_n, shift truncations), bracket/ideal computations and
// an exact simplicity decision procedure. No floating point anywhere.

#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "idealkit/linalg.hpp"
#include "idealkit/matrix.hpp"
#include "idealkit/seqspace.hpp"

namespace idealkit {

/// Subspace of a Lie algebra, in coordinates with respect to the algebra's basis.
struct Subspace {
  Echelon span;

  std::size_t dim() const { return span.dim(); }
  const std::vector<Vec>& basis() const { return span.rows(); }
  bool contains(const Vec& v) const { return span.contains(v); }
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.span == b.span; }
};

struct ClosureResult {
  bool closed = true;
  std::size_t i = 0, j = 0;  // first failing pair, i < j
  RationalMatrix residual;   // [b_i, b_j] minus its projection onto the span
};

/// A Lie algebra given by a linearly independent basis of ambient x ambient
/// rational matrices. Structure constants are computed at construction when the
/// basis is bracket-closed.
class LieAlgebraPresentation {
 public:
  LieAlgebraPresentation(std::string name, std::size_t ambient, std::vector<RationalMatrix> basis)
      : name_(std::move(name)), ambient_(ambient), basis_(std::move(basis)) {
    if (ambient_ == 0) throw InputError("ambient dimension must be >= 1");
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].rows() != ambient_ || basis_[i].cols() != ambient_)
        throw InputError("basis element " + std::to_string(i) + " has shape " + basis_[i].shape() +
                         ", expected " + std::to_string(ambient_) + "x" + std::to_string(ambient_));
      vecs.push_back(basis_[i].vec());
    }
    solver_ = CoordinateSolver(vecs);
    if (solver_.rank() != basis_.size()) throw InputError("basis of '" + name_ + "' is linearly dependent");
    compute_structure();
  }

  const std::string& name() const { return name_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RationalMatrix>& basis() const { return basis_; }
  bool closed() const { return closure_.closed; }
  const ClosureResult& closure() const { return closure_; }

  /// ad(b_i) in basis coordinates: column j holds the coordinates of [b_i, b_j].
  const RationalMatrix& ad(std::size_t i) const {
    require_closed();
    return ad_[i];
  }

  void require_closed() const {
    if (!closure_.closed)
      throw DomainError("'" + name_ + "' is not closed under the bracket ([b" + std::to_string(closure_.i) +
                        ", b" + std::to_string(closure_.j) + "] leaves the span)");
  }

  /// Coordinates of m, or nullopt if m is outside the span.
  std::optional<Vec> coordinates(const RationalMatrix& m) const {
    if (m.rows() != ambient_ || m.cols() != ambient_) return std::nullopt;
    auto r = solver_.solve(m.vec());
    if (!is_zero(r.residual)) return std::nullopt;
    return r.coeffs;
  }

  RationalMatrix element(const Vec& coords) const {
    RationalMatrix m(ambient_, ambient_);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (sgn(coords[i]) != 0) m += basis_[i] * coords[i];
    return m;
  }

  /// [x, y] in coordinates.
  Vec bracket_coords(const Vec& x, const Vec& y) const {
    require_closed();
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (sgn(x[i]) == 0) continue;
      Vec col = apply(ad_[i], y);
      for (std::size_t k = 0; k < dim(); ++k)
        if (sgn(col[k]) != 0) out[k] += x[i] * col[k];
    }
    return out;
  }

  static Vec apply(const RationalMatrix& a, const Vec& v) {
    Vec out(a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(v[j]) == 0) continue;
      for (std::size_t k = 0; k < a.rows(); ++k)
        if (sgn(a(k, j)) != 0) out[k] += a(k, j) * v[j];
    }
    return out;
  }

 private:
  void compute_structure() {
    const std::size_t d = dim();
    std::vector<RationalMatrix> ad(d, RationalMatrix(d, d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        RationalMatrix br = bracket(basis_[i], basis_[j]);
        auto r = solver_.solve(br.vec());
        if (!is_zero(r.residual)) {
          closure_ = {false, i, j, RationalMatrix::from_vec(ambient_, ambient_, std::move(r.residual))};
          return;
        }
        for (std::size_t k = 0; k < d; ++k) {
          ad[i](k, j) = r.coeffs[k];
          ad[j](k, i) = -r.coeffs[k];
        }
      }
    ad_ = std::move(ad);
  }

  std::string name_;
  std::size_t ambient_;
  std::vector<RationalMatrix> basis_;
  CoordinateSolver solver_;
  ClosureResult closure_;
  std::vector<RationalMatrix> ad_;
};

// ---------------------------------------------------------------------------
// Constructors. Basis orderings are row-major over the free entries.

inline void require_positive(std::size_t n) {
  if (n == 0) throw InputError("N must be >= 1");
}

namespace detail {
// Symplectic-type block algebra {[[A, B], [C, -A^T]]} with B = B^T and C = +-C^T.
inline std::vector<RationalMatrix> symplectic_blocks(std::size_t n, bool c_symmetric) {
  const std::size_t a = 2 * n;
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalMatrix m(a, a);
      m(i, j) += 1;
      m(n + j, n + i) -= 1;
      basis.push_back(std::move(m));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      RationalMatrix m(a, a);
      m(i, n + j) = 1;
      m(j, n + i) = 1;
      basis.push_back(std::move(m));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = c_symmetric ? i : i + 1; j < n; ++j) {
      RationalMatrix m(a, a);
      m(n + i, j) = 1;
      m(n + j, i) = c_symmetric ? 1 : -1;
      basis.push_back(std::move(m));
    }
  return basis;
}

inline RationalMatrix diag_difference(std::size_t n, std::size_t i) {
  RationalMatrix m(n, n);
  m(i, i) = 1;
  m(i + 1, i + 1) = -1;
  return m;
}
}  // namespace detail

/// sp(2N): B = B^T, C = C^T, D = -A^T. Dimension N(2N+1).
inline LieAlgebraPresentation sp_standard(std::size_t n) {
  require_positive(n);
  return {"sp(" + std::to_string(2 * n) + ")", 2 * n, detail::symplectic_blocks(n, true)};
}

/// The literal constraint set B = B^T, C = -C^T, D = -A^T. Dimension 2N^2; not
/// bracket-closed for N >= 2.
inline LieAlgebraPresentation sp_paper_literal(std::size_t n) {
  require_positive(n);
  return {"sp-literal(" + std::to_string(2 * n) + ") [paper-literal (closure fails)]", 2 * n,
          detail::symplectic_blocks(n, false)};
}

/// Trace-zero upper triangular N x N. Dimension N(N+1)/2 - 1.
inline LieAlgebraPresentation upper_triangular_sl(std::size_t n) {
  require_positive(n);
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i == j) {
        if (i + 1 < n) basis.push_back(detail::diag_difference(n, i));
      } else {
        basis.push_back(RationalMatrix::unit(n, i, j));
      }
    }
  return {"upper-sl(" + std::to_string(n) + ")", n, std::move(basis)};
}

/// Strictly upper triangular N x N. Dimension N(N-1)/2.
inline LieAlgebraPresentation strictly_upper(std::size_t n) {
  require_positive(n);
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) basis.push_back(RationalMatrix::unit(n, i, j));
  return {"strict-upper(" + std::to_string(n) + ")", n, std::move(basis)};
}

/// sl(N). Dimension N^2 - 1.
inline LieAlgebraPresentation sl(std::size_t n) {
  require_positive(n);
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j)
        basis.push_back(RationalMatrix::unit(n, i, j));
      else if (i + 1 < n)
        basis.push_back(detail::diag_difference(n, i));
    }
  return {"sl(" + std::to_string(n) + ")", n, std::move(basis)};
}

/// Diagonal N x N matrices (abelian).
inline LieAlgebraPresentation diagonal(std::size_t n) {
  require_positive(n);
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(RationalMatrix::unit(n, i, i));
  return {"diag(" + std::to_string(n) + ")", n, std::move(basis)};
}

/// N x N truncation of the forward weighted shift T e_i = w_i e_{i+1}: w_i sits at
/// (i+1, i) in 1-based indexing. A one-element basis (empty if all weights vanish).
inline RationalMatrix shift_matrix(const SequenceExpr& weights, std::size_t n) {
  require_valid(weights);
  RationalMatrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) {
    SeqValue w = eval(weights, i);
    if (!w.exact()) throw DomainError("shift truncation needs rational weights; " + to_dsl(weights) + " is not exact");
    m(i, i - 1) = w.rational();
  }
  return m;
}

inline LieAlgebraPresentation shift_truncation(const SequenceExpr& weights, std::size_t n) {
  require_positive(n);
  RationalMatrix m = shift_matrix(weights, n);
  std::vector<RationalMatrix> basis;
  if (!m.is_zero()) basis.push_back(std::move(m));
  return {"shift(" + to_dsl(weights) + ", " + std::to_string(n) + ")", n, std::move(basis)};
}

/// Block-diagonal direct sum.
inline LieAlgebraPresentation direct_sum(const LieAlgebraPresentation& a, const LieAlgebraPresentation& b) {
  std::vector<RationalMatrix> basis;
  RationalMatrix za(a.ambient_dim(), a.ambient_dim()), zb(b.ambient_dim(), b.ambient_dim());
  for (const auto& m : a.basis()) basis.push_back(direct_sum(m, zb));
  for (const auto& m : b.basis()) basis.push_back(direct_sum(za, m));
  return {a.name() + " + " + b.name(), a.ambient_dim() + b.ambient_dim(), std::move(basis)};
}

struct AlgebraKind {
  enum class Kind { SpStandard, SpPaperLiteral, UpperTriangularSl, StrictlyUpper, SlN, ShiftTruncation, Diagonal };
  Kind kind;
  std::size_t n;
  std::optional<SequenceExpr> weights;
};

inline LieAlgebraPresentation make_algebra(const AlgebraKind& k) {
  using K = AlgebraKind::Kind;
  switch (k.kind) {
    case K::SpStandard: return sp_standard(k.n);
    case K::SpPaperLiteral: return sp_paper_literal(k.n);
    case K::UpperTriangularSl: return upper_triangular_sl(k.n);
    case K::StrictlyUpper: return strictly_upper(k.n);
    case K::SlN: return sl(k.n);
    case K::Diagonal: return diagonal(k.n);
    case K::ShiftTruncation:
      if (!k.weights) throw InputError("shift truncation needs weights");
      return shift_truncation(*k.weights, k.n);
  }
  throw InputError("unknown algebra kind");
}

// ---------------------------------------------------------------------------
// Spans and ideals

/// Canonical reduced echelon basis of the span of equally-shaped matrices.
struct MatrixSpan {
  std::size_t rows = 0, cols = 0;
  Echelon span;

  std::size_t dim() const { return span.dim(); }
  std::vector<RationalMatrix> matrices() const {
    std::vector<RationalMatrix> out;
    for (const auto& r : span.rows()) out.push_back(RationalMatrix::from_vec(rows, cols, r));
    return out;
  }
};

inline MatrixSpan span_reduce(const std::vector<RationalMatrix>& mats) {
  MatrixSpan s;
  if (mats.empty()) return s;
  s.rows = mats.front().rows();
  s.cols = mats.front().cols();
  s.span = Echelon(s.rows * s.cols);
  for (const auto& m : mats) {
    if (m.rows() != s.rows || m.cols() != s.cols) throw DomainError("span_reduce: mixed matrix shapes");
    s.span.insert(m.vec());
  }
  return s;
}

inline ClosureResult closure_check(const LieAlgebraPresentation& L) { return L.closure(); }

inline Subspace subspace_of(const LieAlgebraPresentation& L, const std::vector<Vec>& vecs) {
  Subspace s{Echelon(L.dim())};
  for (const auto& v : vecs) s.span.insert(v);
  return s;
}

/// The subspace of L spanned by matrices; throws when one lies outside L.
inline Subspace subspace_from_matrices(const LieAlgebraPresentation& L, const std::vector<RationalMatrix>& mats) {
  Subspace s{Echelon(L.dim())};
  for (std::size_t i = 0; i < mats.size(); ++i) {
    auto c = L.coordinates(mats[i]);
    if (!c) throw DomainError("matrix " + std::to_string(i) + " is not in " + L.name());
    s.span.insert(*c);
  }
  return s;
}

inline Subspace full_subspace(const LieAlgebraPresentation& L) {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < L.dim(); ++i) vs.push_back(unit_vec(L.dim(), i));
  return subspace_of(L, vs);
}

inline std::vector<RationalMatrix> to_matrices(const LieAlgebraPresentation& L, const Subspace& J) {
  std::vector<RationalMatrix> out;
  for (const auto& v : J.basis()) out.push_back(L.element(v));
  return out;
}

/// [L, L].
inline Subspace derived_algebra(const LieAlgebraPresentation& L) {
  L.require_closed();
  Subspace s{Echelon(L.dim())};
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      Vec col(L.dim());
      for (std::size_t k = 0; k < L.dim(); ++k) col[k] = L.ad(i)(k, j);
      s.span.insert(col);
    }
  return s;
}

/// Smallest Lie ideal containing the seeds (coordinate vectors).
inline Subspace lie_ideal_generated(const LieAlgebraPresentation& L, const std::vector<Vec>& seeds) {
  L.require_closed();
  Subspace J{Echelon(L.dim())};
  std::deque<Vec> pending;
  for (const auto& s : seeds) {
    if (s.size() != L.dim()) throw DomainError("seed has wrong coordinate length");
    if (J.span.insert(s)) pending.push_back(s);
  }
  while (!pending.empty() && J.dim() < L.dim()) {
    Vec v = std::move(pending.front());
    pending.pop_front();
    for (std::size_t i = 0; i < L.dim(); ++i) {
      Vec w = LieAlgebraPresentation::apply(L.ad(i), v);
      if (J.span.insert(w)) pending.push_back(std::move(w));
    }
  }
  return J;
}

inline Subspace lie_ideal_generated(const LieAlgebraPresentation& L, const std::vector<RationalMatrix>& seeds) {
  std::vector<Vec> coords;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto c = L.coordinates(seeds[i]);
    if (!c) throw DomainError("seed " + std::to_string(i) + " is outside " + L.name());
    coords.push_back(*c);
  }
  return lie_ideal_generated(L, coords);
}

struct IdealCheck {
  bool ideal = true;
  std::size_t basis_index = 0;     // b_i of L
  std::size_t subspace_index = 0;  // j-th basis vector of J
  explicit operator bool() const { return ideal; }
};

/// [b, j] in J for every basis b of L and j of J.
inline IdealCheck is_lie_ideal(const LieAlgebraPresentation& L, const Subspace& J) {
  L.require_closed();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t r = 0; r < J.dim(); ++r)
      if (!J.contains(LieAlgebraPresentation::apply(L.ad(i), J.basis()[r]))) return {false, i, r};
  return {};
}

/// {x : [L, x] = 0}.
inline Subspace center(const LieAlgebraPresentation& L) {
  L.require_closed();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t k = 0; k < L.dim(); ++k) {
      Vec r(L.dim());
      for (std::size_t j = 0; j < L.dim(); ++j) r[j] = L.ad(i)(k, j);
      rows.push_back(std::move(r));
    }
  return {kernel(rows, L.dim())};
}

struct KillingForm {
  RationalMatrix form;
  std::size_t rank = 0;
};

/// K_ij = tr(ad b_i ad b_j).
inline KillingForm killing_form(const LieAlgebraPresentation& L) {
  L.require_closed();
  const std::size_t d = L.dim();
  KillingForm k{RationalMatrix(d, d), 0};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rational t = 0;
      const auto& a = L.ad(i);
      const auto& b = L.ad(j);
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q)
          if (sgn(a(p, q)) != 0 && sgn(b(q, p)) != 0) t += a(p, q) * b(q, p);
      k.form(i, j) = t;
      k.form(j, i) = t;
    }
  k.rank = rank(k.form);
  return k;
}

/// Radical of the Killing form, {x : K(x, .) = 0}.
inline Subspace killing_radical(const LieAlgebraPresentation& L) { return {kernel(killing_form(L).form)}; }

struct Commutant {
  std::size_t dim = 0;
  std::vector<RationalMatrix> basis;  // dim L x dim L
};

/// Basis indices whose span generates L as a Lie algebra (greedy, in basis order).
inline std::vector<std::size_t> generating_indices(const LieAlgebraPresentation& L) {
  L.require_closed();
  std::vector<std::size_t> gens;
  Echelon sub(L.dim());
  std::vector<Vec> members;
  auto add = [&](const Vec& v) {
    std::deque<Vec> pending;
    if (sub.insert(v)) pending.push_back(v);
    while (!pending.empty()) {
      Vec x = std::move(pending.front());
      pending.pop_front();
      std::vector<Vec> snapshot = members;
      members.push_back(x);
      for (const auto& y : snapshot) {
        Vec w = L.bracket_coords(x, y);
        if (sub.insert(w)) pending.push_back(std::move(w));
      }
    }
  };
  for (std::size_t i = 0; i < L.dim() && sub.dim() < L.dim(); ++i) {
    Vec e = unit_vec(L.dim(), i);
    if (sub.contains(e)) continue;
    gens.push_back(i);
    add(e);
  }
  return gens;
}

/// {C in End(L) : C ad(b) = ad(b) C for all b}. Commuting with ad of a generating
/// set suffices because ad[x, y] = [ad x, ad y].
inline Commutant adjoint_commutant(const LieAlgebraPresentation& L) {
  L.require_closed();
  const std::size_t d = L.dim();
  SparseKernel sys(d * d);
  for (std::size_t g : generating_indices(L)) {
    const RationalMatrix& a = L.ad(g);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        SparseKernel::Row row;
        for (std::size_t k = 0; k < d; ++k) {
          if (sgn(a(k, c)) != 0) row.emplace_back(static_cast<std::uint32_t>(r * d + k), a(k, c));
          if (sgn(a(r, k)) != 0) row.emplace_back(static_cast<std::uint32_t>(k * d + c), -a(r, k));
        }
        if (!row.empty()) sys.add_equation(std::move(row));
      }
  }
  Echelon ker = sys.solve();
  Commutant out;
  out.dim = ker.dim();
  for (const auto& v : ker.rows()) out.basis.push_back(RationalMatrix::from_vec(d, d, v));
  return out;
}

/// Minimal polynomial (monic, low degree first) by Krylov iteration on powers.
inline Poly minimal_polynomial(const RationalMatrix& c) {
  std::vector<Vec> powers{RationalMatrix::identity(c.rows()).vec()};
  RationalMatrix p = c;
  while (true) {
    CoordinateSolver solver(powers);
    auto r = solver.solve(p.vec());
    if (is_zero(r.residual)) {
      Poly m;
      for (const auto& x : r.coeffs) m.push_back(-x);
      m.push_back(1);
      return m;
    }
    powers.push_back(p.vec());
    p = p * c;
  }
}

enum class Simplicity { Simple, NotSimple, Abelian };

inline const char* to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "Simple";
    case Simplicity::NotSimple: return "NotSimple";
    default: return "Abelian";
  }
}

struct SimplicityResult {
  Simplicity verdict = Simplicity::Simple;
  int step = 0;  // ladder step that decided
  std::string reason;
  std::optional<Subspace> witness;
  std::size_t derived_dim = 0;
  std::optional<std::size_t> center_dim, killing_rank, commutant_dim;
  bool witness_incomplete = false;
  std::vector<RationalMatrix> commutant_certificate;
};

namespace detail {
inline bool proper_nonzero(const LieAlgebraPresentation& L, const Subspace& J) {
  return J.dim() > 0 && J.dim() < L.dim();
}

inline std::optional<Subspace> verified(const LieAlgebraPresentation& L, Subspace J) {
  if (proper_nonzero(L, J) && is_lie_ideal(L, J)) return J;
  return std::nullopt;
}

// Kernels of C - lambda (rational eigenvalues) and of the square-free part of the
// minimal polynomial are ad-invariant, hence ideals, whenever C commutes with ad L.
inline std::optional<Subspace> split_by_commutant(const LieAlgebraPresentation& L, const RationalMatrix& c) {
  const std::size_t d = c.rows();
  Poly m = minimal_polynomial(c);
  if (m.size() <= 2) return std::nullopt;  // scalar
  if (auto roots = rational_roots(m)) {
    for (const auto& lambda : *roots) {
      RationalMatrix shifted = c - RationalMatrix::identity(d) * lambda;
      if (auto J = verified(L, {kernel(shifted)})) return J;
    }
  }
  Poly sf = divmod(m, poly_gcd(m, derivative(m))).first;
  if (sf.size() < m.size())
    if (auto J = verified(L, {kernel(evaluate(sf, c))})) return J;
  return std::nullopt;
}
}  // namespace detail

/// Exact decision ladder: abelian -> derived algebra -> center -> Killing radical
/// -> adjoint commutant. Every witness returned is a verified proper nonzero ideal.
inline SimplicityResult is_simple(const LieAlgebraPresentation& L) {
  L.require_closed();
  if (L.dim() == 0) throw DomainError("simplicity needs dim >= 1");
  SimplicityResult res;
  Subspace der = derived_algebra(L);
  res.derived_dim = der.dim();

  if (der.dim() == 0) {
    res.verdict = Simplicity::Abelian;
    res.step = 1;
    res.reason = "abelian ([L,L] = 0)";
    if (L.dim() >= 2) res.witness = subspace_of(L, {unit_vec(L.dim(), 0)});
    return res;
  }
  if (der.dim() < L.dim()) {
    res.verdict = Simplicity::NotSimple;
    res.step = 2;
    res.reason = "derived algebra [L,L] is a proper nonzero ideal (dim " + std::to_string(der.dim()) + ")";
    res.witness = der;
    return res;
  }
  Subspace z = center(L);
  res.center_dim = z.dim();
  if (detail::proper_nonzero(L, z)) {
    res.verdict = Simplicity::NotSimple;
    res.step = 3;
    res.reason = "nonzero center (dim " + std::to_string(z.dim()) + ")";
    res.witness = z;
    return res;
  }
  KillingForm k = killing_form(L);
  res.killing_rank = k.rank;
  if (k.rank < L.dim()) {
    Subspace rad{kernel(k.form)};
    if (rad.dim() == L.dim())
      throw InternalInconsistency("perfect algebra with zero Killing form contradicts Cartan's criterion");
    if (!is_lie_ideal(L, rad)) throw InternalInconsistency("Killing radical failed the ideal check");
    res.verdict = Simplicity::NotSimple;
    res.step = 4;
    res.reason = "Killing form degenerate; radical is a proper ideal (dim " + std::to_string(rad.dim()) + ")";
    res.witness = rad;
    return res;
  }
  Commutant c = adjoint_commutant(L);
  res.commutant_dim = c.dim;
  res.step = 5;
  if (c.dim == 1) {
    res.verdict = Simplicity::Simple;
    res.reason = "Killing nondegenerate, commutant dim 1";
    return res;
  }
  res.verdict = Simplicity::NotSimple;
  res.reason = "Killing nondegenerate, commutant dim " + std::to_string(c.dim) + " (several simple summands)";
  for (const auto& cm : c.basis)
    if (auto J = detail::split_by_commutant(L, cm)) {
      res.witness = *J;
      return res;
    }
  for (std::size_t a = 0; a < c.basis.size(); ++a)
    for (std::size_t b = a + 1; b < c.basis.size(); ++b)
      if (auto J = detail::split_by_commutant(L, c.basis[a] + c.basis[b] * Rational(2))) {
        res.witness = *J;
        return res;
      }
  res.witness_incomplete = true;
  res.commutant_certificate = c.basis;
  res.reason += "; witness extraction incomplete";
  return res;
}

/// Randomized search for a proper nonzero ideal generated by a single element.
/// Used to cross-check Simple verdicts; reproducible through the seed.
inline std::optional<Subspace> random_ideal_search(const LieAlgebraPresentation& L, std::size_t trials,
                                                   std::uint64_t seed) {
  L.require_closed();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    Vec x(L.dim());
    for (auto& c : x) {
      c = Rational(num(rng), den(rng));
      c.canonicalize();
    }
    if (is_zero(x)) continue;
    Subspace J = lie_ideal_generated(L, std::vector<Vec>{x});
    if (J.dim() < L.dim()) return J;
  }
  return std::nullopt;
}

}  // namespace idealkit
