#include <gtest/gtest.h>

#include <lieenv/random_algebras.hpp>
#include <lieenv/weights.hpp>

#include <cstdlib>
#include <memory>
#include <vector>

using namespace lieenv;

namespace {

std::vector<Scalar> sv(const Field& F, std::initializer_list<int> xs) {
  std::vector<Scalar> v;
  for (int x : xs) v.push_back(F.from_int(x));
  return v;
}

std::shared_ptr<const LieAlgebra> sl2(std::uint32_t p) {
  auto F = std::make_shared<const Field>(p);
  return LieAlgebra::create(F, {"e", "f", "h"},
                            {{0, 1, sv(*F, {0, 0, 1})},
                             {2, 0, sv(*F, {2, 0, 0})},
                             {2, 1, sv(*F, {0, -2, 0})}});
}

// span{e, h} inside sl2: the standard solvable subalgebra
Subspace borel(const std::shared_ptr<const LieAlgebra>& L) {
  return Subspace::from_vectors(L, {L->basis_vec(2), L->basis_vec(0)});
}

}  // namespace

TEST(FilteredBasis, AlignedWindow) {
  auto L = sl2(5);
  auto fb = make_filtered_basis(borel(L), 2);
  EXPECT_EQ(fb.size(), 6u);  // monomials in e, h of degree <= 2
  EXPECT_TRUE(fb.aligned);
  ASSERT_EQ(fb.ambient_index.size(), 2u);
  EXPECT_EQ(fb.ambient_index[0], 0u);  // e
  EXPECT_EQ(fb.ambient_index[1], 2u);  // h
  EXPECT_EQ(fb.sub_alg->name(0), "e");
  EXPECT_EQ(fb.sub_alg->name(1), "h");
  // graded order, scalars first
  EXPECT_EQ(fb.monomials.front(), (Monomial{0, 0}));
  EXPECT_EQ(fb.monomials[1], (Monomial{1, 0}));
  EXPECT_EQ(fb.monomials[2], (Monomial{0, 1}));
  for (std::size_t i = 0; i < fb.size(); ++i)
    EXPECT_EQ(fb.index.at(fb.monomials[i]), i);
}

TEST(FilteredBasis, RejectsNonSubalgebra) {
  auto L = sl2(5);
  auto ef = Subspace::from_vectors(L, {L->basis_vec(0), L->basis_vec(1)});
  EXPECT_THROW(make_filtered_basis(ef, 2), std::invalid_argument);
}

TEST(FilteredBasis, CapEnforced) {
  auto L = sl2(5);
  EXPECT_THROW(make_filtered_basis(borel(L), 2, 3), WindowCapError);
  EXPECT_NO_THROW(make_filtered_basis(borel(L), 2, 6));
}

TEST(FilteredBasis, CapReadsEnvironment) {
  setenv("LIEENV_WINDOW_CAP", "123", 1);
  EXPECT_EQ(default_window_cap(), 123u);
  setenv("LIEENV_WINDOW_CAP", "junk", 1);
  EXPECT_EQ(default_window_cap(), 20000u);
  unsetenv("LIEENV_WINDOW_CAP");
  EXPECT_EQ(default_window_cap(), 20000u);
}

TEST(OperatorMatrix, AgreesWithAdjointAction) {
  auto L = sl2(5);
  auto S = borel(L);
  auto fb = make_filtered_basis(S, 2);
  WindowCoords wc(fb);
  Rng rng(211);
  const Field& F = L->field();
  for (std::size_t i = 0; i < S.dim(); ++i) {
    Mat M = operator_matrix(S.basis_vec(i), fb);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Scalar> coords(fb.size());
      for (auto& s : coords) s = F.element_by_rank(rng() % F.q());
      EnvElement u = wc.from_window(coords);
      auto img = wc.to_window(ad_apply(S.basis_vec(i), u));
      ASSERT_TRUE(img.has_value());
      EXPECT_EQ(mat_vec(F, M, coords), *img);
    }
  }
}

TEST(OperatorMatrix, RejectsNonNormalizingElement) {
  auto L = sl2(5);
  auto line = Subspace::from_vectors(L, {L->basis_vec(0)});
  auto fb = make_filtered_basis(line, 2);
  EXPECT_THROW(operator_matrix(L->basis_vec(1), fb), std::invalid_argument);
}

TEST(Weights, BorelWindowDegreeOne) {
  auto L = sl2(5);
  const Field& F = L->field();
  auto an = enumerate_weights(borel(L), 1);
  // window is 1, e, h; only 1 and e are simultaneous eigenvectors
  ASSERT_EQ(an.reports.size(), 2u);
  EXPECT_EQ(an.reports[0].weight.values, sv(F, {0, 0}));
  EXPECT_EQ(an.reports[0].basis, Mat::from_rows({sv(F, {1, 0, 0})}));
  EXPECT_EQ(an.reports[1].weight.values, sv(F, {0, 2}));
  EXPECT_EQ(an.reports[1].basis, Mat::from_rows({sv(F, {0, 1, 0})}));
}

TEST(Weights, ReportsAreSimultaneousEigenspaces) {
  Rng rng(223);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = std::make_shared<const Field>(p);
    for (int trial = 0; trial < 6; ++trial) {
      auto A = random_solvable_algebra(rng, F);
      auto an = enumerate_weights(Subspace::full(A), 2);
      std::size_t total = 0;
      for (const auto& rep : an.reports) {
        total += rep.basis.nrows;
        for (std::size_t r = 0; r < rep.basis.nrows; ++r) {
          auto v = rep.basis.row(r);
          for (std::size_t i = 0; i < an.ops.size(); ++i)
            EXPECT_EQ(mat_vec(*F, an.ops[i], v),
                      vec_scale(*F, rep.weight.values[i], v));
        }
      }
      EXPECT_LE(total, an.fb.size());
      EXPECT_GE(an.reports.size(), 1u);  // scalars always have weight zero
    }
  }
}

TEST(Weights, CenterMatchesWeightZeroSpace) {
  auto L = sl2(5);
  auto S = borel(L);
  auto an = enumerate_weights(S, 2);
  auto cen = center_basis(S, 2);
  const Field& F = L->field();
  ASSERT_FALSE(an.reports.empty());
  ASSERT_TRUE(an.reports[0].weight.is_zero(F));
  EXPECT_EQ(cen.report.basis, an.reports[0].basis);
  EXPECT_TRUE(cen.report.weight.is_zero(F));
  // the scalar line is always central
  EXPECT_EQ(cen.report.basis.nrows, 1u);

  Rng rng(227);
  auto F3 = std::make_shared<const Field>(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto A = random_solvable_algebra(rng, F3);
    auto full = Subspace::full(A);
    auto an2 = enumerate_weights(full, 2);
    auto cen2 = center_basis(full, 2);
    ASSERT_TRUE(an2.reports[0].weight.is_zero(*F3));
    EXPECT_EQ(cen2.report.basis, an2.reports[0].basis);
  }
}

TEST(Weights, AbelianAlgebraIsAllWeightZero) {
  auto F = std::make_shared<const Field>(5);
  auto A = LieAlgebra::create(F, {"a", "b"}, {});
  auto an = enumerate_weights(Subspace::full(A), 3);
  ASSERT_EQ(an.reports.size(), 1u);
  EXPECT_TRUE(an.reports[0].weight.is_zero(*F));
  EXPECT_EQ(an.reports[0].basis.nrows, an.fb.size());
}

TEST(WindowCoords, AlignedRoundTrip) {
  auto L = sl2(5);
  auto fb = make_filtered_basis(borel(L), 2);
  WindowCoords wc(fb);
  const Field& F = L->field();
  Rng rng(229);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> coords(fb.size());
    for (auto& s : coords) s = F.element_by_rank(rng() % F.q());
    auto back = wc.to_window(wc.from_window(coords));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, coords);
  }
  // degree too high for the window
  auto e = env_embed(L->basis_vec(0));
  EXPECT_FALSE(wc.to_window(env_pow(e, 3)).has_value());
  // uses a generator outside the subalgebra
  EXPECT_FALSE(wc.to_window(env_embed(L->basis_vec(1))).has_value());
}

TEST(WindowCoords, SkewSubspaceGoesThroughProducts) {
  auto L = sl2(5);
  auto diag = Subspace::from_vectors(
      L, {lie_add(L->basis_vec(0), L->basis_vec(1))});  // span{e + f}
  auto fb = make_filtered_basis(diag, 2);
  EXPECT_FALSE(fb.aligned);
  EXPECT_EQ(fb.size(), 3u);
  WindowCoords wc(fb);
  auto g = env_embed(lie_add(L->basis_vec(0), L->basis_vec(1)));
  auto coords = wc.to_window(env_mul(g, g));
  ASSERT_TRUE(coords.has_value());
  EXPECT_EQ(wc.from_window(*coords), env_mul(g, g));
  EXPECT_FALSE(wc.to_window(env_embed(L->basis_vec(0))).has_value());
  // unit maps to the constant monomial
  auto one = wc.to_window(env_one(L));
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ((*one)[0], L->field().one());
}

TEST(Semiinvariance, BorelExamples) {
  auto L = sl2(5);
  auto S = borel(L);
  const Field& F = L->field();
  auto e = env_embed(L->basis_vec(0)), h = env_embed(L->basis_vec(2));
  auto we = is_semiinvariant(e, S);
  ASSERT_TRUE(we.has_value());
  EXPECT_EQ(we->values, sv(F, {0, 2}));
  EXPECT_FALSE(is_semiinvariant(h, S).has_value());
  auto w1 = is_semiinvariant(env_one(L), S);
  ASSERT_TRUE(w1.has_value());
  EXPECT_TRUE(w1->is_zero(F));
  auto we2 = is_semiinvariant(env_mul(e, e), S);
  ASSERT_TRUE(we2.has_value());
  EXPECT_EQ(we2->values, sv(F, {0, 4}));
  EXPECT_THROW(is_semiinvariant(env_zero(L), S), std::invalid_argument);
}

TEST(Semiinvariance, ProductCheck) {
  auto L = sl2(5);
  auto S = borel(L);
  const Field& F = L->field();
  auto e = env_embed(L->basis_vec(0));
  auto pr = check_product_semiinvariance(e, e, S);
  EXPECT_EQ(pr.product, env_mul(e, e));
  ASSERT_TRUE(pr.weight_a && pr.weight_b && pr.weight_product);
  EXPECT_TRUE(pr.condition_holds);
  ASSERT_TRUE(pr.weights_add.has_value());
  EXPECT_TRUE(*pr.weights_add);
  EXPECT_EQ(*pr.weight_product, weight_add(F, *pr.weight_a, *pr.weight_b));
  EXPECT_THROW(check_product_semiinvariance(env_zero(L), e, S),
               std::invalid_argument);
}

TEST(Semiinvariance, WindowMembership) {
  auto L = sl2(5);
  auto an = enumerate_weights(borel(L), 1);
  EXPECT_TRUE(in_semicenter_window(an, env_one(L)));
  EXPECT_TRUE(in_semicenter_window(an, env_embed(L->basis_vec(0))));
  // h is in the window but in no weight space
  EXPECT_FALSE(in_semicenter_window(an, env_embed(L->basis_vec(2))));
  // f is outside the window entirely
  EXPECT_FALSE(in_semicenter_window(an, env_embed(L->basis_vec(1))));
}

TEST(Generation, PowersOfOneGeneratorFillTheWindowWeights) {
  auto L = sl2(5);
  auto S = borel(L);
  auto e = env_embed(L->basis_vec(0));
  auto rep = verify_generation_at_degree({e}, S, std::nullopt, 2);
  // weights (0,0), (0,2), (0,4) realized by 1, e, e^2; all reached
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.generated_dim, 3u);
  EXPECT_EQ(rep.target_dim, 3u);
  ASSERT_EQ(rep.per_weight.size(), 3u);
  for (const auto& [w, dims] : rep.per_weight) EXPECT_EQ(dims.first, dims.second);
}

TEST(Generation, TargetsOneWeight) {
  auto L = sl2(5);
  auto S = borel(L);
  const Field& F = L->field();
  auto e = env_embed(L->basis_vec(0));
  auto rep = verify_generation_at_degree({e}, S, Weight{sv(F, {0, 2})}, 2);
  EXPECT_TRUE(rep.equal);
  ASSERT_EQ(rep.per_weight.size(), 1u);
  EXPECT_EQ(rep.per_weight[0].first.values, sv(F, {0, 2}));
}

TEST(Generation, RejectsBadGenerators) {
  auto L = sl2(5);
  auto S = borel(L);
  auto h = env_embed(L->basis_vec(2));
  EXPECT_THROW(verify_generation_at_degree({h}, S, std::nullopt, 2),
               std::invalid_argument);
  EXPECT_THROW(verify_generation_at_degree({env_zero(L)}, S, std::nullopt, 2),
               std::invalid_argument);
  // a generator too big for the window is skipped, leaving gaps
  auto e = env_embed(L->basis_vec(0));
  auto rep = verify_generation_at_degree({env_pow(e, 3)}, S, std::nullopt, 2);
  EXPECT_FALSE(rep.equal);
}

TEST(Weights, AddAndPrint) {
  Field F(5);
  Weight a{sv(F, {1, 2})}, b{sv(F, {4, 4})};
  EXPECT_EQ(weight_add(F, a, b).values, sv(F, {0, 1}));
  EXPECT_EQ(a.to_string(F), "(1,2)");
  EXPECT_FALSE(a.is_zero(F));
  EXPECT_TRUE(Weight{sv(F, {0, 0})}.is_zero(F));
}
