#ifndef LIEENV_ENV_HPP
#define LIEENV_ENV_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "liealg.hpp"

namespace lieenv {

/// Exponent vector of an ordered monomial b_0^{e_0} ... b_{n-1}^{e_{n-1}}.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t mono_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded order: lower total degree first; within a degree, the monomial
/// whose leftmost differing exponent is larger comes first, so bases list
/// as b_0^d, b_0^{d-1} b_1, ..., b_{n-1}^d.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

using TermMap = std::map<Monomial, Scalar, MonoLess>;

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Per-algebra memo for left multiplication by a generator. Stored in the
/// algebra's opaque cache slot so repeated window computations share work.
struct StraightenCache {
  std::unordered_map<std::vector<std::uint32_t>, std::shared_ptr<const TermMap>, VecHash>
      memo;
};

inline StraightenCache& straighten_cache(const LieAlgebra& A) {
  std::lock_guard<std::mutex> lock(A.cache_mutex);
  if (!A.cache_slot) A.cache_slot = std::make_shared<StraightenCache>();
  return *std::static_pointer_cast<StraightenCache>(A.cache_slot);
}

inline void add_term(const Field& F, TermMap& acc, const Monomial& m, Scalar c) {
  if (F.is_zero(c)) return;
  auto it = acc.find(m);
  if (it == acc.end()) {
    acc.emplace(m, c);
    return;
  }
  it->second = F.add(it->second, c);
  if (F.is_zero(it->second)) acc.erase(it);
}

/// Normal form of b_g * m for an ordered monomial m. Straightening uses
/// b_g b_i = b_i b_g + [b_g, b_i] on the smallest generator b_i of m;
/// the same-degree thread stays sorted, and every bracket contribution
/// drops the total degree, so the recursion terminates.
inline std::shared_ptr<const TermMap> lmul(const LieAlgebra& A, std::size_t g,
                                           const Monomial& m) {
  const Field& F = A.field();
  std::size_t n = A.dim();
  std::size_t lo = n;
  for (std::size_t i = 0; i < n; ++i)
    if (m[i] != 0) {
      lo = i;
      break;
    }
  if (g <= lo || lo == n) {
    auto out = std::make_shared<TermMap>();
    Monomial r = m;
    r[g] += 1;
    out->emplace(std::move(r), F.one());
    return out;
  }

  StraightenCache& cache = straighten_cache(A);
  std::vector<std::uint32_t> key;
  key.reserve(n + 1);
  key.push_back(static_cast<std::uint32_t>(g));
  key.insert(key.end(), m.begin(), m.end());
  if (auto it = cache.memo.find(key); it != cache.memo.end()) return it->second;

  Monomial rest = m;
  rest[lo] -= 1;  // m = b_lo * rest
  auto out = std::make_shared<TermMap>();
  // b_g b_lo rest = b_lo (b_g rest) + [b_g, b_lo] rest
  auto g_rest = lmul(A, g, rest);
  for (const auto& [mm, c] : *g_rest) {
    auto lo_mm = lmul(A, lo, mm);
    for (const auto& [mm2, c2] : *lo_mm)
      add_term(F, *out, mm2, F.mul(c, c2));
  }
  const auto& br = A.bracket_basis(g, lo);
  for (std::size_t t = 0; t < n; ++t) {
    if (F.is_zero(br[t])) continue;
    auto t_rest = lmul(A, t, rest);
    for (const auto& [mm, c] : *t_rest)
      add_term(F, *out, mm, F.mul(br[t], c));
  }
  cache.memo.emplace(std::move(key), out);
  return out;
}

/// Normal form of the product of two ordered monomials.
inline TermMap mono_mul(const LieAlgebra& A, const Monomial& a, const Monomial& b) {
  const Field& F = A.field();
  TermMap acc;
  acc.emplace(b, F.one());
  // multiply on the left by the generators of a, rightmost first
  for (std::size_t gi = a.size(); gi-- > 0;) {
    for (std::uint32_t rep = 0; rep < a[gi]; ++rep) {
      TermMap next;
      for (const auto& [m, c] : acc) {
        auto part = lmul(A, gi, m);
        for (const auto& [mm, c2] : *part)
          add_term(F, next, mm, F.mul(c, c2));
      }
      acc = std::move(next);
    }
  }
  return acc;
}

}  // namespace detail

/// Element of the universal enveloping algebra in PBW normal form:
/// a finite sum of ordered monomials with nonzero coefficients.
struct EnvElement {
  std::shared_ptr<const LieAlgebra> alg;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }

  /// Total degree of the normal form; nullopt for the zero element.
  std::optional<std::uint32_t> degree() const {
    std::optional<std::uint32_t> d;
    for (const auto& [m, c] : terms) {
      (void)c;
      std::uint32_t md = mono_degree(m);
      if (!d || md > *d) d = md;
    }
    return d;
  }

  std::string to_string() const {
    const Field& F = alg->field();
    std::string s;
    for (const auto& [m, c] : terms) {
      if (!s.empty()) s += " + ";
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += alg->name(i);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) {
        s += F.to_string(c);
      } else if (c == F.one()) {
        s += mono;
      } else {
        s += F.to_string(c) + "*" + mono;
      }
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const EnvElement& a, const EnvElement& b) {
    return a.alg == b.alg && a.terms == b.terms;
  }
};

inline EnvElement env_zero(std::shared_ptr<const LieAlgebra> alg) {
  return {std::move(alg), {}};
}

inline EnvElement env_scalar(std::shared_ptr<const LieAlgebra> alg, Scalar s) {
  EnvElement e{std::move(alg), {}};
  if (!e.alg->field().is_zero(s)) e.terms.emplace(Monomial(e.alg->dim(), 0), s);
  return e;
}

inline EnvElement env_one(std::shared_ptr<const LieAlgebra> alg) {
  return env_scalar(alg, alg->field().one());
}

inline EnvElement env_embed(const LieVec& v) {
  EnvElement e{v.alg, {}};
  const Field& F = v.alg->field();
  for (std::size_t i = 0; i < v.c.size(); ++i) {
    if (F.is_zero(v.c[i])) continue;
    Monomial m(v.c.size(), 0);
    m[i] = 1;
    e.terms.emplace(std::move(m), v.c[i]);
  }
  return e;
}

inline EnvElement env_from_terms(std::shared_ptr<const LieAlgebra> alg, TermMap terms) {
  const Field& F = alg->field();
  for (auto it = terms.begin(); it != terms.end();)
    it = F.is_zero(it->second) ? terms.erase(it) : std::next(it);
  return {std::move(alg), std::move(terms)};
}

inline EnvElement env_add(const EnvElement& a, const EnvElement& b) {
  if (a.alg != b.alg) throw std::invalid_argument("mixed algebras");
  const Field& F = a.alg->field();
  TermMap acc = a.terms;
  for (const auto& [m, c] : b.terms) detail::add_term(F, acc, m, c);
  return {a.alg, std::move(acc)};
}

inline EnvElement env_scale(Scalar s, const EnvElement& a) {
  const Field& F = a.alg->field();
  TermMap acc;
  for (const auto& [m, c] : a.terms) {
    Scalar sc = F.mul(s, c);
    if (!F.is_zero(sc)) acc.emplace(m, sc);
  }
  return {a.alg, std::move(acc)};
}

inline EnvElement env_sub(const EnvElement& a, const EnvElement& b) {
  return env_add(a, env_scale(a.alg->field().neg(a.alg->field().one()), b));
}

inline EnvElement env_mul(const EnvElement& a, const EnvElement& b) {
  if (a.alg != b.alg) throw std::invalid_argument("mixed algebras");
  const Field& F = a.alg->field();
  TermMap acc;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Scalar f = F.mul(ca, cb);
      for (const auto& [m, c] : detail::mono_mul(*a.alg, ma, mb))
        detail::add_term(F, acc, m, F.mul(f, c));
    }
  return {a.alg, std::move(acc)};
}

inline EnvElement env_pow(const EnvElement& a, std::uint32_t n) {
  EnvElement r = env_one(a.alg);
  for (std::uint32_t i = 0; i < n; ++i) r = env_mul(r, a);
  return r;
}

inline EnvElement env_commutator(const EnvElement& a, const EnvElement& b) {
  return env_sub(env_mul(a, b), env_mul(b, a));
}

/// Extends a linear map on generators (generator j maps to images[j]) to
/// the derivation it induces on the enveloping algebra: each monomial is a
/// word, and the derivation replaces one letter at a time.
inline EnvElement derivation_apply(const std::vector<LieVec>& images,
                                   const EnvElement& u) {
  const LieAlgebra& A = *u.alg;
  const Field& F = A.field();
  std::size_t n = A.dim();
  if (images.size() != n) throw std::invalid_argument("one image per generator required");
  for (const auto& w : images)
    if (w.alg != u.alg) throw std::invalid_argument("mixed algebras");
  TermMap acc;
  for (const auto& [m, coeff] : u.terms) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[j] == 0) continue;
      const LieVec& w = images[j];
      if (w.is_zero()) continue;
      for (std::uint32_t s = 1; s <= m[j]; ++s) {
        Monomial prefix(n, 0), suffix(n, 0);
        for (std::size_t t = 0; t < j; ++t) prefix[t] = m[t];
        prefix[j] = s - 1;
        suffix[j] = m[j] - s;
        for (std::size_t t = j + 1; t < n; ++t) suffix[t] = m[t];
        for (std::size_t t = 0; t < n; ++t) {
          if (F.is_zero(w.c[t])) continue;
          Scalar f = F.mul(coeff, w.c[t]);
          auto t_suffix = detail::lmul(A, t, suffix);
          for (const auto& [mm, c] : *t_suffix)
            for (const auto& [mm2, c2] : detail::mono_mul(A, prefix, mm))
              detail::add_term(F, acc, mm2, F.mul(f, F.mul(c, c2)));
        }
      }
    }
  }
  return {u.alg, std::move(acc)};
}

/// Adjoint action of a Lie element on the enveloping algebra. Agrees with
/// env_commutator(env_embed(h), u) but works degree by degree, which keeps
/// window computations inside the window.
inline EnvElement ad_apply(const LieVec& h, const EnvElement& u) {
  if (h.alg != u.alg) throw std::invalid_argument("mixed algebras");
  std::vector<LieVec> images;
  images.reserve(h.alg->dim());
  for (std::size_t j = 0; j < h.alg->dim(); ++j)
    images.push_back(bracket(h, h.alg->basis_vec(j)));
  return derivation_apply(images, u);
}

}  // namespace lieenv

#endif
