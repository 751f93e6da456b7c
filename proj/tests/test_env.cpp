#include <gtest/gtest.h>

#include <lieenv/env.hpp>
#include <lieenv/random_algebras.hpp>

#include <memory>
#include <vector>

using namespace lieenv;

namespace {

std::shared_ptr<const Field> field(std::uint32_t p) {
  return std::make_shared<const Field>(p);
}

std::vector<Scalar> sv(const Field& F, std::initializer_list<int> xs) {
  std::vector<Scalar> v;
  for (int x : xs) v.push_back(F.from_int(x));
  return v;
}

std::shared_ptr<const LieAlgebra> sl2(std::uint32_t p) {
  auto F = field(p);
  return LieAlgebra::create(F, {"e", "f", "h"},
                            {{0, 1, sv(*F, {0, 0, 1})},
                             {2, 0, sv(*F, {2, 0, 0})},
                             {2, 1, sv(*F, {0, -2, 0})}});
}

std::shared_ptr<const LieAlgebra> heisenberg(std::uint32_t p) {
  auto F = field(p);
  return LieAlgebra::create(F, {"x", "y", "z"}, {{0, 1, sv(*F, {0, 0, 1})}});
}

std::shared_ptr<const LieAlgebra> abelian(std::uint32_t p, std::size_t n) {
  auto F = field(p);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i + 1));
  return LieAlgebra::create(F, names, {});
}

EnvElement mono(const std::shared_ptr<const LieAlgebra>& L,
                std::initializer_list<std::uint32_t> exps, int coeff = 1) {
  TermMap t;
  t.emplace(Monomial(exps), L->field().from_int(coeff));
  return env_from_terms(L, std::move(t));
}

}  // namespace

TEST(Env, StraighteningSl2) {
  auto L = sl2(5);
  auto e = env_embed(L->basis_vec(0)), f = env_embed(L->basis_vec(1)),
       h = env_embed(L->basis_vec(2));
  // f e = e f - h
  EXPECT_EQ(env_mul(f, e), env_sub(mono(L, {1, 1, 0}), h));
  // h e = e h + 2 e
  EXPECT_EQ(env_mul(h, e), env_add(mono(L, {1, 0, 1}), env_scale(L->field().from_int(2), e)));
  // already ordered products stay ordered
  EXPECT_EQ(env_mul(e, f), mono(L, {1, 1, 0}));
  EXPECT_EQ(env_mul(e, e), mono(L, {2, 0, 0}));
}

TEST(Env, StraighteningHeisenberg) {
  auto L = heisenberg(5);
  auto x = env_embed(L->basis_vec(0)), y = env_embed(L->basis_vec(1)),
       z = env_embed(L->basis_vec(2));
  // y x = x y - z
  EXPECT_EQ(env_mul(y, x), env_sub(mono(L, {1, 1, 0}), z));
  // z is central
  EXPECT_TRUE(env_commutator(z, env_mul(x, y)).is_zero());
  // y^2 x^2 = x^2 y^2 - 4 x y z + 2 z^2, straightened in one call
  auto lhs = env_mul(env_mul(y, y), env_mul(x, x));
  auto rhs = env_add(env_sub(mono(L, {2, 2, 0}), mono(L, {1, 1, 1}, 4)),
                     mono(L, {0, 0, 2}, 2));
  EXPECT_EQ(lhs, rhs);
}

TEST(Env, ScalarsAndEmbedding) {
  auto L = sl2(3);
  const Field& F = L->field();
  auto a = env_embed(L->basis_vec(0));
  EXPECT_EQ(env_mul(env_one(L), a), a);
  EXPECT_EQ(env_mul(a, env_one(L)), a);
  EXPECT_TRUE(env_mul(env_zero(L), a).is_zero());
  EXPECT_EQ(env_scale(F.from_int(2), env_scalar(L, F.from_int(2))),
            env_one(L));
  EXPECT_TRUE(env_sub(a, a).is_zero());
  EXPECT_TRUE(env_scalar(L, F.zero()).is_zero());
}

TEST(Env, EmbeddingTurnsBracketsIntoCommutators) {
  Rng rng(101);
  for (auto L : {sl2(5), heisenberg(2)}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_lie_vec(rng, L), b = random_lie_vec(rng, L);
      EXPECT_EQ(env_commutator(env_embed(a), env_embed(b)),
                env_embed(bracket(a, b)));
    }
  }
}

TEST(Env, AssociativeAndDistributive) {
  Rng rng(103);
  auto F3 = field(3);
  for (int trial = 0; trial < 12; ++trial) {
    auto L = trial % 2 ? sl2(5) : random_solvable_algebra(rng, F3);
    auto a = random_env_element(rng, L, 2, 3),
         b = random_env_element(rng, L, 2, 3),
         c = random_env_element(rng, L, 2, 3);
    EXPECT_EQ(env_mul(env_mul(a, b), c), env_mul(a, env_mul(b, c)));
    EXPECT_EQ(env_mul(a, env_add(b, c)),
              env_add(env_mul(a, b), env_mul(a, c)));
    EXPECT_EQ(env_mul(env_add(a, b), c),
              env_add(env_mul(a, c), env_mul(b, c)));
  }
}

TEST(Env, DegreeAdditive) {
  Rng rng(107);
  for (auto L : {sl2(5), heisenberg(3)}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto a = random_env_element(rng, L, 3, 2),
           b = random_env_element(rng, L, 3, 2);
      auto prod = env_mul(a, b);
      ASSERT_FALSE(a.is_zero());
      ASSERT_FALSE(b.is_zero());
      // no zero divisors: the top symbols multiply in the graded ring
      ASSERT_FALSE(prod.is_zero());
      EXPECT_EQ(*prod.degree(), *a.degree() + *b.degree());
    }
  }
  EXPECT_FALSE(env_zero(sl2(5)).degree().has_value());
  EXPECT_EQ(env_one(sl2(5)).degree(), 0u);
}

TEST(Env, PowAndCommutatorBasics) {
  auto L = heisenberg(3);
  auto x = env_embed(L->basis_vec(0)), y = env_embed(L->basis_vec(1));
  EXPECT_EQ(env_pow(x, 0), env_one(L));
  EXPECT_EQ(env_pow(x, 3), mono(L, {3, 0, 0}));
  EXPECT_EQ(env_commutator(x, y), env_embed(L->basis_vec(2)));
  EXPECT_EQ(env_commutator(y, x),
            env_scale(L->field().from_int(-1), env_embed(L->basis_vec(2))));
}

TEST(Env, AdMatchesCommutator) {
  Rng rng(109);
  for (auto L : {sl2(5), heisenberg(2)}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto h = random_lie_vec(rng, L);
      auto u = random_env_element(rng, L, 3, 3);
      EXPECT_EQ(ad_apply(h, u), env_commutator(env_embed(h), u));
    }
  }
}

TEST(Env, AdIsADerivation) {
  Rng rng(113);
  auto L = sl2(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto h = random_lie_vec(rng, L);
    auto u = random_env_element(rng, L, 2, 3),
         v = random_env_element(rng, L, 2, 3);
    EXPECT_EQ(ad_apply(h, env_mul(u, v)),
              env_add(env_mul(ad_apply(h, u), v), env_mul(u, ad_apply(h, v))));
  }
}

TEST(Env, AdIsARepresentation) {
  Rng rng(127);
  for (auto L : {sl2(5), heisenberg(3)}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto h1 = random_lie_vec(rng, L), h2 = random_lie_vec(rng, L);
      auto u = random_env_element(rng, L, 3, 3);
      EXPECT_EQ(ad_apply(bracket(h1, h2), u),
                env_sub(ad_apply(h1, ad_apply(h2, u)),
                        ad_apply(h2, ad_apply(h1, u))));
    }
  }
}

TEST(Env, AdPowerOfEmbeddedPower) {
  // (ad h)^p u = [h^p, u] in characteristic p
  Rng rng(131);
  for (std::uint32_t p : {2u, 3u}) {
    auto F = field(p);
    for (int trial = 0; trial < 8; ++trial) {
      auto L = random_solvable_algebra(rng, F);
      auto h = random_lie_vec(rng, L);
      auto u = random_env_element(rng, L, 2, 2);
      EnvElement iter = u;
      for (std::uint32_t s = 0; s < p; ++s) iter = ad_apply(h, iter);
      EXPECT_EQ(iter, env_commutator(env_pow(env_embed(h), p), u));
    }
  }
}

TEST(Env, AbelianMultiplicationIsPolynomial) {
  auto L = abelian(5, 3);
  Rng rng(137);
  const Field& F = L->field();
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_env_element(rng, L, 3, 3),
         b = random_env_element(rng, L, 3, 3);
    EXPECT_EQ(env_mul(a, b), env_mul(b, a));
    // exponent-vector convolution, computed directly
    TermMap expect;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Monomial m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        detail::add_term(F, expect, m, F.mul(ca, cb));
      }
    EXPECT_EQ(env_mul(a, b), env_from_terms(L, std::move(expect)));
  }
}

TEST(Env, DerivationRejectsBadInput) {
  auto L = sl2(5);
  auto u = env_embed(L->basis_vec(0));
  EXPECT_THROW(derivation_apply({L->basis_vec(0)}, u), std::invalid_argument);
  auto other = sl2(5);
  EXPECT_THROW(env_mul(u, env_embed(other->basis_vec(0))),
               std::invalid_argument);
  EXPECT_THROW(ad_apply(other->basis_vec(0), u), std::invalid_argument);
}

TEST(Env, ToString) {
  auto L = sl2(5);
  EXPECT_EQ(env_zero(L).to_string(), "0");
  EXPECT_EQ(env_one(L).to_string(), "1");
  auto e = env_embed(L->basis_vec(0));
  EXPECT_EQ(env_scale(L->field().from_int(3), e).to_string(), "3*e");
  // terms print in graded order: degree first, then leftmost-heavy
  auto u = env_add(mono(L, {1, 2, 0}, 2), env_embed(L->basis_vec(2)));
  EXPECT_EQ(u.to_string(), "h + 2*e*f^2");
  EXPECT_EQ(mono(L, {0, 1, 1}).to_string(), "f*h");
}
