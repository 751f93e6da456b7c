#ifndef LIEENV_RANDOM_ALGEBRAS_HPP
#define LIEENV_RANDOM_ALGEBRAS_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "env.hpp"
#include "gf.hpp"
#include "liealg.hpp"
#include "stability.hpp"

namespace lieenv {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, const Field& F) {
  return F.element_by_rank(static_cast<std::uint32_t>(rng() % F.q()));
}

inline Scalar random_nonzero_scalar(Rng& rng, const Field& F) {
  return F.element_by_rank(1 + static_cast<std::uint32_t>(rng() % (F.q() - 1)));
}

/// Random solvable Lie algebra: the span of a few random upper-triangular
/// matrices closed under the commutator. Subalgebras of the triangular
/// matrices are solvable and satisfy Jacobi for free, so every draw is a
/// valid sample; draws outside the wanted dimension range are retried.
inline std::shared_ptr<const LieAlgebra> random_solvable_algebra(
    Rng& rng, std::shared_ptr<const Field> F, std::size_t min_dim = 2,
    std::size_t max_dim = 5) {
  const Field& f = *F;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::size_t d = 2 + rng() % 3;  // matrix size 2..4
    std::size_t nseeds = 1 + rng() % 3;
    std::size_t nn = d * d;

    auto mat_bracket = [&](const std::vector<Scalar>& a,
                           const std::vector<Scalar>& b) {
      std::vector<Scalar> c(nn, f.zero());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t j = 0; j < d; ++j) {
            Scalar ab = f.mul(a[i * d + k], b[k * d + j]);
            Scalar ba = f.mul(b[i * d + k], a[k * d + j]);
            c[i * d + j] = f.add(c[i * d + j], f.sub(ab, ba));
          }
      return c;
    };

    Echelon ech(f, nn);
    std::vector<std::vector<Scalar>> reps;
    std::vector<std::vector<Scalar>> queue;
    for (std::size_t s = 0; s < nseeds; ++s) {
      std::vector<Scalar> m(nn, f.zero());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) m[i * d + j] = random_scalar(rng, f);
      if (ech.insert(m)) {
        reps.push_back(m);
        queue.push_back(m);
      }
    }
    while (!queue.empty()) {
      auto cur = std::move(queue.back());
      queue.pop_back();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        auto w = mat_bracket(cur, reps[i]);
        if (ech.insert(w)) {
          reps.push_back(w);
          queue.push_back(w);
        }
      }
    }
    std::size_t n = ech.dim();
    if (n < min_dim || n > max_dim) continue;

    // structure constants over the echelonized basis
    std::vector<std::vector<Scalar>> basis = ech.rows();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i + 1));
    std::vector<BracketEntry> entries;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto w = mat_bracket(basis[i], basis[j]);
        auto coords = ech.coords(w);
        if (!coords) throw std::logic_error("closed matrix span failed to resolve a bracket");
        entries.push_back({i, j, std::move(*coords)});
      }
    auto A = LieAlgebra::create(F, names, entries);
    if (!A->validate().ok())
      throw std::logic_error("random matrix algebra failed validation");
    return A;
  }
  throw std::runtime_error("failed to sample a solvable algebra in range");
}

inline LieVec random_lie_vec(Rng& rng, const std::shared_ptr<const LieAlgebra>& L) {
  std::vector<Scalar> c(L->dim());
  for (auto& s : c) s = random_scalar(rng, L->field());
  return {L, std::move(c)};
}

inline EnvElement random_env_element(Rng& rng,
                                     const std::shared_ptr<const LieAlgebra>& L,
                                     std::uint32_t max_degree,
                                     std::size_t max_terms) {
  const Field& F = L->field();
  TermMap terms;
  std::size_t nterms = 1 + rng() % max_terms;
  for (std::size_t t = 0; t < nterms; ++t) {
    Monomial m(L->dim(), 0);
    std::uint32_t deg = static_cast<std::uint32_t>(rng() % (max_degree + 1));
    for (std::uint32_t i = 0; i < deg; ++i) m[rng() % L->dim()] += 1;
    detail::add_term(F, terms, m, random_nonzero_scalar(rng, F));
  }
  return env_from_terms(L, std::move(terms));
}

}  // namespace lieenv

#endif
