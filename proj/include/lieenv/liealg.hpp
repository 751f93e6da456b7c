#ifndef LIEENV_LIEALG_HPP
#define LIEENV_LIEALG_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "linalg.hpp"

namespace lieenv {

class LieAlgebra;

/// Element of a Lie algebra, as coordinates over the stored basis.
struct LieVec {
  std::shared_ptr<const LieAlgebra> alg;
  std::vector<Scalar> c;

  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const LieVec& a, const LieVec& b) {
    return a.alg == b.alg && a.c == b.c;
  }
};

struct BracketEntry {
  std::size_t i, j;
  std::vector<Scalar> coords;
};

struct LieValidation {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Finite-dimensional Lie algebra given by structure constants over a
/// finite field. The table is stored for both orientations; the create()
/// factory takes one orientation per basis pair and fills in the negation,
/// so antisymmetry holds by construction (including [b,b] = 0, which
/// matters when the characteristic is 2).
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
public:
  static std::shared_ptr<const LieAlgebra> create(
      std::shared_ptr<const Field> F, std::vector<std::string> names,
      const std::vector<BracketEntry>& entries) {
    auto A = std::shared_ptr<LieAlgebra>(new LieAlgebra(std::move(F), std::move(names)));
    std::size_t n = A->dim();
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (const auto& e : entries) {
      if (e.i >= n || e.j >= n) throw std::invalid_argument("bracket entry index out of range");
      if (e.coords.size() != n) throw std::invalid_argument("bracket entry has wrong length");
      if (e.i == e.j) {
        if (!vec_is_zero(*A->field_, e.coords))
          throw std::invalid_argument("bracket [" + A->name(e.i) + "," + A->name(e.i) + "] must vanish");
        continue;
      }
      if (seen[e.i][e.j] || seen[e.j][e.i])
        throw std::invalid_argument("conflicting bracket entries for (" + A->name(e.i) + "," + A->name(e.j) + ")");
      seen[e.i][e.j] = seen[e.j][e.i] = true;
      for (std::size_t t = 0; t < n; ++t) {
        A->sc_[e.i][e.j][t] = e.coords[t];
        A->sc_[e.j][e.i][t] = A->field_->neg(e.coords[t]);
      }
    }
    return A;
  }

  /// Unchecked full-table constructor; exists so validate() can be pointed
  /// at tables that violate antisymmetry or Jacobi.
  static std::shared_ptr<const LieAlgebra> create_raw(
      std::shared_ptr<const Field> F, std::vector<std::string> names,
      std::vector<std::vector<std::vector<Scalar>>> table) {
    auto A = std::shared_ptr<LieAlgebra>(new LieAlgebra(std::move(F), std::move(names)));
    std::size_t n = A->dim();
    if (table.size() != n) throw std::invalid_argument("table has wrong size");
    for (auto& row : table) {
      if (row.size() != n) throw std::invalid_argument("table has wrong size");
      for (auto& cell : row)
        if (cell.size() != n) throw std::invalid_argument("table has wrong size");
    }
    A->sc_ = std::move(table);
    return A;
  }

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  const std::vector<Scalar>& bracket_basis(std::size_t i, std::size_t j) const {
    return sc_[i][j];
  }

  LieVec zero() const { return {shared_from_this(), std::vector<Scalar>(dim())}; }

  LieVec basis_vec(std::size_t i) const {
    LieVec v = zero();
    v.c[i] = field_->one();
    return v;
  }

  LieVec vec(std::vector<Scalar> coords) const {
    if (coords.size() != dim()) throw std::invalid_argument("coordinate length mismatch");
    return {shared_from_this(), std::move(coords)};
  }

  /// Antisymmetry, vanishing squares, and the Jacobi identity, checked
  /// entry by entry; returns a list of findings rather than throwing.
  LieValidation validate() const {
    LieValidation rep;
    const Field& F = *field_;
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      if (!vec_is_zero(F, sc_[i][i]))
        rep.issues.push_back("bracket [" + name(i) + "," + name(i) + "] is nonzero");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool anti = true;
        for (std::size_t t = 0; t < n; ++t)
          if (F.add(sc_[i][j][t], sc_[j][i][t]) != F.zero()) anti = false;
        if (!anti)
          rep.issues.push_back("brackets [" + name(i) + "," + name(j) + "] and [" +
                               name(j) + "," + name(i) + "] are not antisymmetric");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          std::vector<Scalar> resid(n, F.zero());
          accum_double_bracket(resid, i, j, k);
          accum_double_bracket(resid, j, k, i);
          accum_double_bracket(resid, k, i, j);
          if (!vec_is_zero(F, resid)) {
            LieVec r{shared_from_this(), resid};
            rep.issues.push_back("Jacobi fails on (" + name(i) + "," + name(j) + "," +
                                 name(k) + "): residual " + r.to_string());
          }
        }
    return rep;
  }

  // opaque per-algebra cache slot, used by the enveloping-algebra layer
  mutable std::mutex cache_mutex;
  mutable std::shared_ptr<void> cache_slot;

private:
  LieAlgebra(std::shared_ptr<const Field> F, std::vector<std::string> names)
      : field_(std::move(F)), names_(std::move(names)) {
    if (!field_) throw std::invalid_argument("null field");
    if (names_.empty()) throw std::invalid_argument("basis must be nonempty");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("duplicate basis name " + names_[i]);
    sc_.assign(names_.size(),
               std::vector<std::vector<Scalar>>(names_.size(),
                                                std::vector<Scalar>(names_.size())));
  }

  // resid += [b_a, [b_b, b_c]]
  void accum_double_bracket(std::vector<Scalar>& resid, std::size_t a,
                            std::size_t b, std::size_t c) const {
    const Field& F = *field_;
    std::size_t n = dim();
    for (std::size_t t = 0; t < n; ++t) {
      Scalar inner = sc_[b][c][t];
      if (F.is_zero(inner)) continue;
      for (std::size_t u = 0; u < n; ++u)
        resid[u] = F.add(resid[u], F.mul(inner, sc_[a][t][u]));
    }
  }

  std::shared_ptr<const Field> field_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<Scalar>>> sc_;
};

inline bool LieVec::is_zero() const { return vec_is_zero(alg->field(), c); }

inline LieVec lie_add(const LieVec& a, const LieVec& b) {
  if (a.alg != b.alg) throw std::invalid_argument("mixed algebras");
  return {a.alg, vec_add(a.alg->field(), a.c, b.c)};
}

inline LieVec lie_scale(Scalar s, const LieVec& a) {
  return {a.alg, vec_scale(a.alg->field(), s, a.c)};
}

inline LieVec lie_sub(const LieVec& a, const LieVec& b) {
  return lie_add(a, lie_scale(a.alg->field().neg(a.alg->field().one()), b));
}

inline LieVec bracket(const LieVec& a, const LieVec& b) {
  if (a.alg != b.alg) throw std::invalid_argument("mixed algebras");
  const Field& F = a.alg->field();
  std::size_t n = a.alg->dim();
  std::vector<Scalar> out(n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (F.is_zero(b.c[j])) continue;
      Scalar f = F.mul(a.c[i], b.c[j]);
      const auto& sc = a.alg->bracket_basis(i, j);
      for (std::size_t t = 0; t < n; ++t)
        out[t] = F.add(out[t], F.mul(f, sc[t]));
    }
  }
  return {a.alg, std::move(out)};
}

inline std::string LieVec::to_string() const {
  const Field& F = alg->field();
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (F.is_zero(c[i])) continue;
    if (!s.empty()) s += " + ";
    if (c[i] != F.one()) s += F.to_string(c[i]) + "*";
    s += alg->name(i);
  }
  return s.empty() ? "0" : s;
}

/// Subspace of a Lie algebra, stored as a reduced echelon basis so that
/// equality, membership, and coordinates are all canonical.
class Subspace {
public:
  Subspace(std::shared_ptr<const LieAlgebra> alg)
      : alg_(std::move(alg)), ech_(alg_->field(), alg_->dim()) {}

  static Subspace from_vectors(std::shared_ptr<const LieAlgebra> alg,
                               const std::vector<LieVec>& gens) {
    Subspace S(std::move(alg));
    for (const auto& g : gens) {
      if (g.alg != S.alg_) throw std::invalid_argument("mixed algebras");
      S.ech_.insert(g.c);
    }
    return S;
  }

  static Subspace full(std::shared_ptr<const LieAlgebra> alg) {
    Subspace S(alg);
    for (std::size_t i = 0; i < alg->dim(); ++i)
      S.ech_.insert(alg->basis_vec(i).c);
    return S;
  }

  const std::shared_ptr<const LieAlgebra>& algebra() const { return alg_; }
  std::size_t dim() const { return ech_.dim(); }
  std::size_t ambient_dim() const { return alg_->dim(); }
  const Echelon& echelon() const { return ech_; }

  bool contains(const LieVec& v) const { return ech_.contains(v.c); }

  std::optional<std::vector<Scalar>> coords_of(const LieVec& v) const {
    return ech_.coords(v.c);
  }

  LieVec basis_vec(std::size_t i) const { return {alg_, ech_.rows()[i]}; }

  bool insert(const LieVec& v) { return ech_.insert(v.c); }

  bool same_span(const Subspace& o) const {
    if (dim() != o.dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!o.contains(basis_vec(i))) return false;
    return true;
  }

  bool is_subalgebra() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!contains(bracket(basis_vec(i), basis_vec(j)))) return false;
    return true;
  }

private:
  std::shared_ptr<const LieAlgebra> alg_;
  Echelon ech_;
};

/// [ambient, S] subset of S, with S subset of ambient checked first.
inline bool is_ideal(const Subspace& S, const Subspace& ambient) {
  if (S.algebra() != ambient.algebra()) throw std::invalid_argument("mixed algebras");
  for (std::size_t i = 0; i < S.dim(); ++i)
    if (!ambient.contains(S.basis_vec(i)))
      throw std::invalid_argument("subspace is not contained in the ambient subalgebra");
  for (std::size_t a = 0; a < ambient.dim(); ++a)
    for (std::size_t s = 0; s < S.dim(); ++s)
      if (!S.contains(bracket(ambient.basis_vec(a), S.basis_vec(s)))) return false;
  return true;
}

/// Span of all brackets of basis pairs of S; S must be closed.
inline Subspace derived_algebra(const Subspace& S) {
  if (!S.is_subalgebra())
    throw std::invalid_argument("subspace is not closed under the bracket");
  Subspace D(S.algebra());
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = i + 1; j < S.dim(); ++j)
      D.insert(bracket(S.basis_vec(i), S.basis_vec(j)));
  return D;
}

inline Subspace bracket_span(const Subspace& A, const Subspace& B) {
  Subspace out(A.algebra());
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      out.insert(bracket(A.basis_vec(i), B.basis_vec(j)));
  return out;
}

/// Terms S, [S,S], [S,[S,S]], ... until the dimension stops dropping.
inline std::vector<Subspace> lower_central_series(const Subspace& S) {
  if (!S.is_subalgebra())
    throw std::invalid_argument("subspace is not closed under the bracket");
  std::vector<Subspace> terms{S};
  while (terms.back().dim() > 0) {
    Subspace next = bracket_span(S, terms.back());
    if (next.dim() == terms.back().dim()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

/// Terms S, [S,S], [[S,S],[S,S]], ... until the dimension stops dropping.
inline std::vector<Subspace> derived_series(const Subspace& S) {
  if (!S.is_subalgebra())
    throw std::invalid_argument("subspace is not closed under the bracket");
  std::vector<Subspace> terms{S};
  while (terms.back().dim() > 0) {
    Subspace next = bracket_span(terms.back(), terms.back());
    if (next.dim() == terms.back().dim()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

inline bool is_nilpotent(const Subspace& S) {
  return lower_central_series(S).back().dim() == 0;
}

inline bool is_solvable(const Subspace& S) {
  return derived_series(S).back().dim() == 0;
}

/// Quotient of the full algebra by an ideal. The surviving basis
/// directions are the ambient coordinates away from the ideal's pivots,
/// and they keep their ambient names.
struct Quotient {
  std::shared_ptr<const LieAlgebra> alg;
  std::vector<std::size_t> complement;  // ambient indices
  Subspace ideal;

  LieVec project(const LieVec& v) const {
    auto resid = ideal.echelon().reduce(v.c);
    std::vector<Scalar> qc(complement.size());
    for (std::size_t t = 0; t < complement.size(); ++t) qc[t] = resid[complement[t]];
    return {alg, std::move(qc)};
  }

  LieVec lift(const LieVec& qv) const {
    std::vector<Scalar> amb(ideal.ambient_dim());
    for (std::size_t t = 0; t < complement.size(); ++t) amb[complement[t]] = qv.c[t];
    return {ideal.algebra(), std::move(amb)};
  }
};

inline Quotient quotient(const Subspace& I) {
  auto L = I.algebra();
  Subspace full = Subspace::full(L);
  if (!is_ideal(I, full)) throw std::invalid_argument("subspace is not an ideal");
  std::vector<bool> is_pivot(L->dim(), false);
  for (auto p : I.echelon().pivots()) is_pivot[p] = true;
  std::vector<std::size_t> comp;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < L->dim(); ++i)
    if (!is_pivot[i]) {
      comp.push_back(i);
      names.push_back(L->name(i));
    }
  Quotient Q{nullptr, comp, I};
  // structure constants by bracketing lifts and projecting back
  std::size_t m = comp.size();
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      LieVec w = bracket(L->basis_vec(comp[a]), L->basis_vec(comp[b]));
      auto resid = I.echelon().reduce(w.c);
      std::vector<Scalar> qc(m);
      for (std::size_t t = 0; t < m; ++t) qc[t] = resid[comp[t]];
      entries.push_back({a, b, std::move(qc)});
    }
  if (m == 0) throw std::invalid_argument("quotient by the full algebra is empty");
  Q.alg = LieAlgebra::create(L->field_ptr(), names, entries);
  return Q;
}

namespace detail {

/// All simultaneous eigenvectors of the adjoint operators of A, found by
/// restricting eigenspaces one generator at a time, branching over the
/// field in lexicographic coefficient order. Returns the echelonized
/// solution space per realized eigenvalue tuple, tuples in scan order.
inline std::vector<std::pair<std::vector<Scalar>, Mat>> common_ad_eigenvectors(
    const LieAlgebra& A) {
  const Field& F = A.field();
  if (F.q() > (1u << 16))
    throw std::invalid_argument("eigenvalue scan requires field order <= 2^16");
  std::size_t n = A.dim();
  std::vector<Mat> ad(n, Mat(n, n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& w = A.bracket_basis(g, j);
      for (std::size_t i = 0; i < n; ++i) ad[g].at(i, j) = w[i];
    }
  std::vector<std::pair<std::vector<Scalar>, Mat>> found;
  std::vector<Scalar> tuple(n);
  auto dfs = [&](auto&& self, std::size_t level, const Mat& space) -> void {
    if (space.nrows == 0) return;
    if (level == n) {
      found.emplace_back(tuple, space);
      return;
    }
    for (std::uint32_t r = 0; r < F.q(); ++r) {
      Scalar mu = F.element_by_rank(r);
      Mat next = eigen_restrict(F, ad[level], space, mu);
      if (next.nrows == 0) continue;
      tuple[level] = mu;
      self(self, level + 1, next);
    }
  };
  dfs(dfs, 0, Mat::identity(F, n));
  return found;
}

}  // namespace detail

/// Chain L = I_1 > I_2 > ... > I_{n+1} = 0 of ideals of L with
/// one-dimensional steps, if one exists over the base field. Built from
/// the bottom: each step picks a common eigenvector of the adjoint action
/// on the current quotient (the candidate with the lowest echelon pivot),
/// and absent such an eigenvector there is no chain.
inline std::optional<std::vector<Subspace>> completely_solvable_flag(
    std::shared_ptr<const LieAlgebra> L) {
  std::size_t n = L->dim();
  Subspace I(L);  // grows from 0 up to L
  std::vector<Subspace> increasing{I};
  while (I.dim() < n) {
    Quotient Q = quotient(I);
    auto branches = detail::common_ad_eigenvectors(*Q.alg);
    std::size_t best_pivot = 0;
    const Mat* best_mat = nullptr;
    std::size_t best_in_mat = 0;
    for (const auto& [tuple, space] : branches) {
      (void)tuple;
      for (std::size_t r = 0; r < space.nrows; ++r) {
        std::size_t piv = space.ncols;
        for (std::size_t j = 0; j < space.ncols; ++j)
          if (!Q.alg->field().is_zero(space.at(r, j))) {
            piv = j;
            break;
          }
        if (!best_mat || piv < best_pivot) {
          best_mat = &space;
          best_in_mat = r;
          best_pivot = piv;
        }
      }
    }
    if (!best_mat) return std::nullopt;
    LieVec qv{Q.alg, best_mat->row(best_in_mat)};
    I.insert(Q.lift(qv));
    increasing.push_back(I);
  }
  std::vector<Subspace> chain(increasing.rbegin(), increasing.rend());
  return chain;
}

}  // namespace lieenv

#endif
