#include <gtest/gtest.h>

#include <lieenv/gf.hpp>
#include <lieenv/linalg.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

using namespace lieenv;

namespace {

Mat random_mat(std::mt19937& rng, const Field& F, std::size_t r, std::size_t c) {
  Mat m(r, c);
  for (auto& s : m.data) s = F.element_by_rank(rng() % F.q());
  return m;
}

std::vector<Scalar> sv(const Field& F, std::initializer_list<int> xs) {
  std::vector<Scalar> v;
  for (int x : xs) v.push_back(F.from_int(x));
  return v;
}

}  // namespace

TEST(Mat, Basics) {
  Field F(3);
  Mat id = Mat::identity(F, 2);
  EXPECT_EQ(id.at(0, 0), F.one());
  EXPECT_EQ(id.at(0, 1), F.zero());
  Mat m = Mat::from_rows({sv(F, {1, 2}), sv(F, {0, 1})});
  EXPECT_EQ(m.nrows, 2u);
  EXPECT_EQ(m.ncols, 2u);
  EXPECT_EQ(m.row(1), sv(F, {0, 1}));
  EXPECT_THROW(Mat::from_rows({sv(F, {1, 2}), sv(F, {1})}),
               std::invalid_argument);
}

TEST(Mat, MulAndVec) {
  Field F(5);
  Mat a = Mat::from_rows({sv(F, {1, 2}), sv(F, {3, 4})});
  Mat swap = Mat::from_rows({sv(F, {0, 1}), sv(F, {1, 0})});
  Mat prod = mat_mul(F, a, swap);
  EXPECT_EQ(prod, Mat::from_rows({sv(F, {2, 1}), sv(F, {4, 3})}));
  EXPECT_EQ(mat_mul(F, a, Mat::identity(F, 2)), a);
  EXPECT_EQ(mat_mul(F, Mat::identity(F, 2), a), a);
  EXPECT_EQ(mat_vec(F, a, sv(F, {1, 1})), sv(F, {3, 2}));
  EXPECT_THROW(mat_mul(F, a, Mat(3, 2)), std::invalid_argument);
  EXPECT_THROW(mat_vec(F, a, sv(F, {1, 1, 1})), std::invalid_argument);
}

TEST(Mat, MulAssociativeRandom) {
  Field F(3);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = random_mat(rng, F, 3, 4), b = random_mat(rng, F, 4, 2),
        c = random_mat(rng, F, 2, 5);
    EXPECT_EQ(mat_mul(F, mat_mul(F, a, b), c), mat_mul(F, a, mat_mul(F, b, c)));
  }
}

TEST(Rref, CanonicalForm) {
  Field F(3);
  Mat m = Mat::from_rows({sv(F, {2, 1, 0}), sv(F, {1, 2, 1})});
  auto pivots = rref(F, m);
  EXPECT_EQ(pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(m, Mat::from_rows({sv(F, {1, 2, 0}), sv(F, {0, 0, 1})}));
}

TEST(Rref, RankOfSingular) {
  Field F(5);
  Mat m = Mat::from_rows({sv(F, {1, 2}), sv(F, {2, 4})});
  EXPECT_EQ(rank(F, m), 1u);
  EXPECT_EQ(rank(F, Mat::identity(F, 4)), 4u);
  EXPECT_EQ(rank(F, Mat(3, 3)), 0u);
}

TEST(NullSpace, KnownKernel) {
  Field F(2);
  Mat m = Mat::from_rows({sv(F, {1, 1, 1})});
  Mat ker = null_space(F, m);
  EXPECT_EQ(ker, Mat::from_rows({sv(F, {1, 0, 1}), sv(F, {0, 1, 1})}));
}

TEST(NullSpace, RandomProperties) {
  std::mt19937 rng(23);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field F(p);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
      Mat m = random_mat(rng, F, r, c);
      Mat ker = null_space(F, m);
      EXPECT_EQ(ker.nrows + rank(F, m), c);  // rank-nullity
      for (std::size_t i = 0; i < ker.nrows; ++i)
        EXPECT_TRUE(vec_is_zero(F, mat_vec(F, m, ker.row(i))));
      Mat again = ker;
      rref(F, again);
      EXPECT_EQ(again, ker);  // already reduced
    }
  }
}

TEST(Echelon, InsertAndMembership) {
  Field F(3);
  Echelon ech(F, 4);
  EXPECT_TRUE(ech.insert(sv(F, {1, 2, 0, 1})));
  EXPECT_FALSE(ech.insert(sv(F, {2, 1, 0, 2})));  // scalar multiple
  EXPECT_TRUE(ech.insert(sv(F, {0, 1, 1, 0})));
  EXPECT_EQ(ech.dim(), 2u);
  EXPECT_TRUE(ech.contains(sv(F, {1, 0, 1, 1})));  // sum of the two rows
  EXPECT_FALSE(ech.contains(sv(F, {0, 0, 0, 1})));
  EXPECT_TRUE(vec_is_zero(F, ech.reduce(sv(F, {2, 4, 0, 2}))));
  EXPECT_THROW(ech.insert(sv(F, {1, 0})), std::invalid_argument);
}

TEST(Echelon, CoordsRecombine) {
  Field F(5);
  std::mt19937 rng(31);
  Echelon ech(F, 5);
  for (int i = 0; i < 3; ++i) {
    std::vector<Scalar> v(5);
    for (auto& s : v) s = F.element_by_rank(rng() % 5);
    ech.insert(v);
  }
  std::vector<Scalar> target(5, F.zero());
  std::vector<Scalar> mix = {F.from_int(2), F.from_int(3), F.from_int(1)};
  for (std::size_t i = 0; i < ech.dim(); ++i)
    target = vec_add(F, target, vec_scale(F, mix[i], ech.rows()[i]));
  auto c = ech.coords(target);
  ASSERT_TRUE(c.has_value());
  std::vector<Scalar> back(5, F.zero());
  for (std::size_t i = 0; i < ech.dim(); ++i)
    back = vec_add(F, back, vec_scale(F, (*c)[i], ech.rows()[i]));
  EXPECT_EQ(back, target);
}

TEST(Echelon, DimMatchesRank) {
  std::mt19937 rng(43);
  Field F(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 4, cnt = 1 + rng() % 6;
    std::vector<std::vector<Scalar>> rows;
    Echelon ech(F, n);
    for (std::size_t i = 0; i < cnt; ++i) {
      std::vector<Scalar> v(n);
      for (auto& s : v) s = F.element_by_rank(rng() % 3);
      rows.push_back(v);
      ech.insert(v);
    }
    EXPECT_EQ(ech.dim(), rank(F, Mat::from_rows(rows)));
  }
}

TEST(SpanSolver, CoordsUseOriginalGenerators) {
  Field F(3);
  std::vector<Scalar> a = sv(F, {1, 0, 2}), b = sv(F, {0, 1, 1});
  std::vector<std::vector<Scalar>> gens = {a, b, vec_add(F, a, b)};
  SpanSolver sp(F, gens, 3);
  EXPECT_EQ(sp.dim(), 2u);
  std::vector<Scalar> v = vec_add(F, a, vec_scale(F, F.from_int(2), b));
  auto c = sp.coords(v);
  ASSERT_TRUE(c.has_value());
  ASSERT_EQ(c->size(), 3u);
  std::vector<Scalar> back(3, F.zero());
  for (std::size_t g = 0; g < gens.size(); ++g)
    back = vec_add(F, back, vec_scale(F, (*c)[g], gens[g]));
  EXPECT_EQ(back, v);
  EXPECT_FALSE(sp.contains(sv(F, {0, 0, 1})));
}

TEST(EigenRestrict, DiagonalOperator) {
  Field F(3);
  Mat M(2, 2);
  M.at(0, 0) = F.one();
  M.at(1, 1) = F.from_int(2);
  Mat B = Mat::identity(F, 2);
  EXPECT_EQ(eigen_restrict(F, M, B, F.one()),
            Mat::from_rows({sv(F, {1, 0})}));
  EXPECT_EQ(eigen_restrict(F, M, B, F.from_int(2)),
            Mat::from_rows({sv(F, {0, 1})}));
  EXPECT_EQ(eigen_restrict(F, M, B, F.zero()).nrows, 0u);
}

TEST(EigenRestrict, NonInvariantSubspace) {
  Field F(3);
  Mat M(2, 2);
  M.at(0, 1) = F.one();  // sends e2 to e1, kills e1
  Mat diag = Mat::from_rows({sv(F, {1, 1})});
  EXPECT_EQ(eigen_restrict(F, M, diag, F.zero()).nrows, 0u);
  Mat axis = Mat::from_rows({sv(F, {1, 0})});
  EXPECT_EQ(eigen_restrict(F, M, axis, F.zero()), axis);
}

TEST(EigenRestrict, MatchesBruteForce) {
  std::mt19937 rng(57);
  for (std::uint32_t p : {2u, 3u}) {
    Field F(p);
    for (int trial = 0; trial < 15; ++trial) {
      std::size_t n = 2 + rng() % 3;
      Mat M = random_mat(rng, F, n, n);
      Mat B = random_mat(rng, F, 1 + rng() % n, n);
      Scalar mu = F.element_by_rank(rng() % p);
      Mat got = eigen_restrict(F, M, B, mu);

      // every reported row really is a mu-eigenvector inside the span
      Echelon span(F, n);
      for (std::size_t r = 0; r < B.nrows; ++r) span.insert(B.row(r));
      for (std::size_t r = 0; r < got.nrows; ++r) {
        auto v = got.row(r);
        EXPECT_TRUE(span.contains(v));
        EXPECT_EQ(mat_vec(F, M, v), vec_scale(F, mu, v));
      }

      // count solutions by walking every combination of the basis rows
      std::set<std::vector<std::uint32_t>> solutions;
      std::vector<std::uint32_t> digits(B.nrows, 0);
      while (true) {
        std::vector<Scalar> x(n, F.zero());
        for (std::size_t r = 0; r < B.nrows; ++r)
          x = vec_add(F, x, vec_scale(F, F.element_by_rank(digits[r]), B.row(r)));
        if (mat_vec(F, M, x) == vec_scale(F, mu, x)) {
          std::vector<std::uint32_t> key;
          for (auto s : x) key.push_back(s.v);
          solutions.insert(key);
        }
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      std::size_t expect = 1;
      for (std::size_t r = 0; r < got.nrows; ++r) expect *= p;
      EXPECT_EQ(solutions.size(), expect);
    }
  }
}
