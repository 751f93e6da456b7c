#ifndef LIEENV_SELFTEST_HPP
#define LIEENV_SELFTEST_HPP

// Randomized sweeps: the cross-validators over random solvable algebras, and
// the multiplication engine against identities that hold in any enveloping
// algebra. Failures carry a replayable counterexample bundle.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "env.hpp"
#include "fixtures.hpp"
#include "random_algebras.hpp"
#include "stability.hpp"

namespace lieenv {

struct ViolationRecord {
  std::string check;
  std::string bundle;
};

struct SelftestOutcome {
  std::size_t samples = 0;
  std::vector<ViolationRecord> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
};

/// Runs the four equivalence validators over random solvable algebras with a
/// codimension-one ideal above the derived algebra. Fields cycle through
/// order 2, 3 and 5; window degrees cycle through 1..3.
inline SelftestOutcome selftest_validators(std::uint64_t seed, std::size_t count) {
  SelftestOutcome out;
  std::vector<std::shared_ptr<const Field>> fields = {
      std::make_shared<const Field>(2), std::make_shared<const Field>(3),
      std::make_shared<const Field>(5)};
  Rng rng(seed);
  std::size_t degree_hist[3] = {0, 0, 0};
  for (std::size_t i = 0; i < count; ++i) {
    auto A = random_solvable_algebra(rng, fields[i % fields.size()], 2, 5);
    std::uint32_t degree = 1 + static_cast<std::uint32_t>(rng() % 3);
    ++degree_hist[degree - 1];
    Decomposition dec = codim1_decomposition(A);
    ++out.samples;
    auto guard = [&](const char* name, auto&& fn) {
      try {
        fn();
      } catch (const ValidatorViolation& v) {
        out.violations.push_back({name, v.bundle});
      }
    };
    guard("codim1_equivalence", [&] { validate_codim1_equivalence(dec, degree); });
    guard("semicenter_equivalence",
          [&] { validate_semicenter_equivalence(dec, degree); });
    guard("nilpotent_stability", [&] { validate_nilpotent_stability(dec, degree); });
    guard("derived_vanishing_equivalence",
          [&] { validate_derived_vanishing_equivalence(dec, degree); });
  }
  out.notes.push_back(std::to_string(out.samples) +
                      " random solvable algebras of dimension 2..5 over F2/F3/F5, "
                      "codimension-one decompositions, window degrees 1:" +
                      std::to_string(degree_hist[0]) + " 2:" +
                      std::to_string(degree_hist[1]) + " 3:" +
                      std::to_string(degree_hist[2]));
  return out;
}

namespace detail {

inline std::shared_ptr<const LieAlgebra> sl2_f5() {
  auto F = std::make_shared<const Field>(5);
  std::vector<BracketEntry> entries = {
      {0, 1, {F->from_int(0), F->from_int(0), F->from_int(1)}},        // [e,f] = h
      {2, 0, {F->from_int(2), F->from_int(0), F->from_int(0)}},        // [h,e] = 2e
      {2, 1, {F->from_int(0), F->from_int(3), F->from_int(0)}},        // [h,f] = -2f
  };
  return LieAlgebra::create(F, {"e", "f", "h"}, entries);
}

// Plain commutative polynomial product by exponent addition; the reference
// for multiplication in an abelian algebra.
inline EnvElement abelian_product_oracle(const EnvElement& a, const EnvElement& b) {
  const Field& F = a.alg->field();
  TermMap acc;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      add_term(F, acc, m, F.mul(ca, cb));
    }
  return {a.alg, std::move(acc)};
}

}  // namespace detail

/// Exercises the product engine against identities valid in any enveloping
/// algebra: associativity, distributivity, degree additivity, the derivation
/// and representation properties of the adjoint action, agreement between the
/// windowed adjoint and the commutator, the characteristic-p power identity,
/// and plain polynomial multiplication in the abelian case.
inline SelftestOutcome selftest_env_identities(std::uint64_t seed, std::size_t count) {
  SelftestOutcome out;
  std::vector<std::shared_ptr<const Field>> fields = {
      std::make_shared<const Field>(2), std::make_shared<const Field>(3),
      std::make_shared<const Field>(5)};
  auto fixture_alg = fixtures::load_unstable_weights().algebra;
  auto sl2 = detail::sl2_f5();
  Rng rng(seed);

  for (std::size_t i = 0; i < count; ++i) {
    std::shared_ptr<const LieAlgebra> A;
    switch (i % 5) {
      case 0:
      case 1:
      case 2:
        A = random_solvable_algebra(rng, fields[i % fields.size()], 2, 5);
        break;
      case 3:
        A = fixture_alg;
        break;
      default:
        A = sl2;
        break;
    }
    const Field& F = A->field();
    EnvElement a = random_env_element(rng, A, 2, 3);
    EnvElement b = random_env_element(rng, A, 2, 3);
    EnvElement c = random_env_element(rng, A, 2, 3);
    LieVec h1 = random_lie_vec(rng, A);
    LieVec h2 = random_lie_vec(rng, A);
    ++out.samples;

    auto fail = [&](const char* name, const std::string& extra) {
      std::string bundle = describe_algebra(*A) + "a = " + a.to_string() +
                           "\nb = " + b.to_string() + "\nc = " + c.to_string() +
                           "\nh1 = " + h1.to_string() + "\nh2 = " + h2.to_string() +
                           "\n" + extra;
      out.violations.push_back({name, std::move(bundle)});
    };

    if (!(env_mul(env_mul(a, b), c) == env_mul(a, env_mul(b, c))))
      fail("associativity", "");
    if (!(env_mul(a, env_add(b, c)) == env_add(env_mul(a, b), env_mul(a, c))))
      fail("distributivity", "");
    if (!a.is_zero() && !b.is_zero()) {
      EnvElement ab = env_mul(a, b);
      if (ab.is_zero() || *ab.degree() != *a.degree() + *b.degree())
        fail("degree_additivity",
             "deg a = " + std::to_string(*a.degree()) +
                 ", deg b = " + std::to_string(*b.degree()) + ", ab = " + ab.to_string());
    }
    {
      EnvElement lhs = ad_apply(h1, env_mul(a, b));
      EnvElement rhs = env_add(env_mul(ad_apply(h1, a), b), env_mul(a, ad_apply(h1, b)));
      if (!(lhs == rhs)) fail("derivation", "");
    }
    {
      EnvElement lhs = ad_apply(bracket(h1, h2), a);
      EnvElement rhs = env_sub(ad_apply(h1, ad_apply(h2, a)), ad_apply(h2, ad_apply(h1, a)));
      if (!(lhs == rhs)) fail("representation", "");
    }
    if (!(ad_apply(h1, a) == env_commutator(env_embed(h1), a)))
      fail("adjoint_vs_commutator", "");
    {
      EnvElement iter = a;
      for (std::uint32_t t = 0; t < F.p(); ++t) iter = ad_apply(h1, iter);
      EnvElement direct = env_commutator(env_pow(env_embed(h1), F.p()), a);
      if (!(iter == direct)) fail("power_identity", "");
    }
  }

  // the abelian reference: straightening must reduce to exponent addition
  {
    auto F = fields[2];
    auto Ab = LieAlgebra::create(F, {"t1", "t2", "t3"}, {});
    for (std::size_t i = 0; i < std::max<std::size_t>(count / 4, 1); ++i) {
      EnvElement a = random_env_element(rng, Ab, 3, 4);
      EnvElement b = random_env_element(rng, Ab, 3, 4);
      ++out.samples;
      EnvElement ab = env_mul(a, b);
      if (!(ab == env_mul(b, a)) || !(ab == detail::abelian_product_oracle(a, b))) {
        out.violations.push_back(
            {"abelian_polynomial_product",
             "a = " + a.to_string() + "\nb = " + b.to_string() + "\nab = " + ab.to_string()});
      }
    }
  }
  out.notes.push_back(std::to_string(out.samples) +
                      " samples over random solvable, bundled and classical algebras, "
                      "plus the abelian polynomial reference");
  return out;
}

}  // namespace lieenv

#endif
