#ifndef LIEENV_LINALG_HPP
#define LIEENV_LINALG_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace lieenv {

/// Dense row-major matrix over a finite field. Deliberately minimal: the
/// problem sizes here are a few hundred rows, so everything is exact
/// Gaussian elimination with no fancy pivoting.
struct Mat {
  std::size_t nrows = 0, ncols = 0;
  std::vector<Scalar> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : nrows(r), ncols(c), data(r * c) {}

  Scalar& at(std::size_t i, std::size_t j) { return data[i * ncols + j]; }
  Scalar at(std::size_t i, std::size_t j) const { return data[i * ncols + j]; }

  static Mat identity(const Field& F, std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
  }

  static Mat from_rows(std::vector<std::vector<Scalar>> rows) {
    Mat m;
    m.nrows = rows.size();
    m.ncols = rows.empty() ? 0 : rows[0].size();
    m.data.reserve(m.nrows * m.ncols);
    for (auto& r : rows) {
      if (r.size() != m.ncols) throw std::invalid_argument("ragged rows");
      for (auto s : r) m.data.push_back(s);
    }
    return m;
  }

  std::vector<Scalar> row(std::size_t i) const {
    return {data.begin() + i * ncols, data.begin() + (i + 1) * ncols};
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.nrows == b.nrows && a.ncols == b.ncols && a.data == b.data;
  }
};

inline Mat mat_mul(const Field& F, const Mat& a, const Mat& b) {
  if (a.ncols != b.nrows) throw std::invalid_argument("mat_mul shape mismatch");
  Mat c(a.nrows, b.ncols);
  for (std::size_t i = 0; i < a.nrows; ++i)
    for (std::size_t k = 0; k < a.ncols; ++k) {
      Scalar aik = a.at(i, k);
      if (F.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.ncols; ++j)
        c.at(i, j) = F.add(c.at(i, j), F.mul(aik, b.at(k, j)));
    }
  return c;
}

inline std::vector<Scalar> mat_vec(const Field& F, const Mat& m,
                                   const std::vector<Scalar>& x) {
  if (m.ncols != x.size()) throw std::invalid_argument("mat_vec shape mismatch");
  std::vector<Scalar> y(m.nrows);
  for (std::size_t i = 0; i < m.nrows; ++i) {
    Scalar acc = F.zero();
    for (std::size_t j = 0; j < m.ncols; ++j)
      acc = F.add(acc, F.mul(m.at(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

inline bool vec_is_zero(const Field& F, const std::vector<Scalar>& v) {
  for (auto s : v)
    if (!F.is_zero(s)) return false;
  return true;
}

inline std::vector<Scalar> vec_add(const Field& F, std::vector<Scalar> a,
                                   const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], b[i]);
  return a;
}

inline std::vector<Scalar> vec_scale(const Field& F, Scalar c,
                                     std::vector<Scalar> a) {
  for (auto& s : a) s = F.mul(c, s);
  return a;
}

/// In-place reduction to reduced row echelon form. Pivot choice is the
/// first nonzero entry scanning rows top to bottom, so the result (and
/// every basis derived from it) is deterministic. Returns pivot columns.
inline std::vector<std::size_t> rref(const Field& F, Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.ncols && r < m.nrows; ++c) {
    std::size_t sel = m.nrows;
    for (std::size_t i = r; i < m.nrows; ++i)
      if (!F.is_zero(m.at(i, c))) {
        sel = i;
        break;
      }
    if (sel == m.nrows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.ncols; ++j)
        std::swap(m.at(sel, j), m.at(r, j));
    Scalar invp = F.inv(m.at(r, c));
    for (std::size_t j = c; j < m.ncols; ++j)
      m.at(r, j) = F.mul(invp, m.at(r, j));
    for (std::size_t i = 0; i < m.nrows; ++i) {
      if (i == r) continue;
      Scalar f = m.at(i, c);
      if (F.is_zero(f)) continue;
      Scalar nf = F.neg(f);
      for (std::size_t j = c; j < m.ncols; ++j)
        m.at(i, j) = F.add(m.at(i, j), F.mul(nf, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Field& F, Mat m) { return rref(F, m).size(); }

/// Rows spanning {x : m x = 0}, returned in reduced echelon form.
inline Mat null_space(const Field& F, Mat m) {
  auto pivots = rref(F, m);
  std::vector<bool> is_pivot(m.ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t c = 0; c < m.ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Scalar> v(m.ncols, F.zero());
    v[c] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = F.neg(m.at(i, c));
    basis.push_back(std::move(v));
  }
  Mat out = Mat::from_rows(std::move(basis));
  rref(F, out);  // canonical form
  return out;
}

/// Echelonized row span with membership queries. Rows are kept in reduced
/// echelon form; insert() reports whether the vector enlarged the span.
class Echelon {
public:
  explicit Echelon(const Field& F, std::size_t ncols) : F_(&F), ncols_(ncols) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Subtracts the projection onto the span; returns the residual.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = v[pivots_[i]];
      if (F_->is_zero(f)) continue;
      Scalar nf = F_->neg(f);
      for (std::size_t j = 0; j < ncols_; ++j)
        v[j] = F_->add(v[j], F_->mul(nf, rows_[i][j]));
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const {
    return vec_is_zero(*F_, reduce(v));
  }

  /// Coordinates of v in terms of the echelon rows, if v is in the span.
  std::optional<std::vector<Scalar>> coords(std::vector<Scalar> v) const {
    std::vector<Scalar> c(rows_.size(), F_->zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = v[pivots_[i]];
      if (F_->is_zero(f)) continue;
      c[i] = f;
      Scalar nf = F_->neg(f);
      for (std::size_t j = 0; j < ncols_; ++j)
        v[j] = F_->add(v[j], F_->mul(nf, rows_[i][j]));
    }
    if (!vec_is_zero(*F_, v)) return std::nullopt;
    return c;
  }

  bool insert(std::vector<Scalar> v) {
    if (v.size() != ncols_) throw std::invalid_argument("echelon width mismatch");
    v = reduce(std::move(v));
    std::size_t piv = ncols_;
    for (std::size_t j = 0; j < ncols_; ++j)
      if (!F_->is_zero(v[j])) {
        piv = j;
        break;
      }
    if (piv == ncols_) return false;
    Scalar invp = F_->inv(v[piv]);
    for (auto& s : v) s = F_->mul(invp, s);
    // back-substitute into earlier rows, keep rows sorted by pivot
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = rows_[i][piv];
      if (F_->is_zero(f)) continue;
      Scalar nf = F_->neg(f);
      for (std::size_t j = 0; j < ncols_; ++j)
        rows_[i][j] = F_->add(rows_[i][j], F_->mul(nf, v[j]));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
  }

  Mat to_mat() const { return Mat::from_rows(rows_); }

private:
  const Field* F_;
  std::size_t ncols_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves membership in the span of an arbitrary (non-echelon) generating
/// set, reporting coordinates with respect to the original generators.
class SpanSolver {
public:
  SpanSolver(const Field& F, const std::vector<std::vector<Scalar>>& gens,
             std::size_t ncols)
      : F_(&F), ncols_(ncols) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].size() != ncols) throw std::invalid_argument("span width mismatch");
      // carry the generator index tail [v | e_g] through elimination
      std::vector<Scalar> row = gens[g];
      row.resize(ncols + gens.size(), F_->zero());
      row[ncols + g] = F_->one();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar f = row[pivots_[i]];
        if (F_->is_zero(f)) continue;
        Scalar nf = F_->neg(f);
        for (std::size_t j = 0; j < row.size(); ++j)
          row[j] = F_->add(row[j], F_->mul(nf, rows_[i][j]));
      }
      std::size_t piv = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (!F_->is_zero(row[j])) {
          piv = j;
          break;
        }
      if (piv == ncols) continue;  // dependent generator
      Scalar invp = F_->inv(row[piv]);
      for (auto& s : row) s = F_->mul(invp, s);
      rows_.push_back(std::move(row));
      pivots_.push_back(piv);
    }
    ngens_ = gens.size();
  }

  std::size_t dim() const { return rows_.size(); }

  /// Coordinates c with sum_g c[g] * gens[g] = v, if v lies in the span.
  std::optional<std::vector<Scalar>> coords(const std::vector<Scalar>& v) const {
    std::vector<Scalar> resid = v;
    std::vector<Scalar> combo(ngens_, F_->zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar f = resid[pivots_[i]];
      if (F_->is_zero(f)) continue;
      Scalar nf = F_->neg(f);
      for (std::size_t j = 0; j < ncols_; ++j)
        resid[j] = F_->add(resid[j], F_->mul(nf, rows_[i][j]));
      for (std::size_t g = 0; g < ngens_; ++g)
        combo[g] = F_->add(combo[g], F_->mul(f, rows_[i][ncols_ + g]));
    }
    if (!vec_is_zero(*F_, resid)) return std::nullopt;
    return combo;
  }

  bool contains(const std::vector<Scalar>& v) const { return coords(v).has_value(); }

private:
  const Field* F_;
  std::size_t ncols_ = 0, ngens_ = 0;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rows spanning {b in rowspan(basis) : b M^T restricted... }; precisely:
/// given an operator matrix M (columns = images in window coordinates) and
/// a subspace given by rows B, returns reduced rows spanning
/// {x in rowspan(B) : M x = mu x}. Works whether or not the subspace is
/// M-invariant, by solving (M - mu I) (c B)^T = 0 for coefficient vectors c.
inline Mat eigen_restrict(const Field& F, const Mat& M, const Mat& B, Scalar mu) {
  if (M.nrows != M.ncols || M.ncols != B.ncols)
    throw std::invalid_argument("eigen_restrict shape mismatch");
  // columns of S are (M - mu I) b_r^T for each basis row b_r
  Mat S(M.nrows, B.nrows);
  for (std::size_t r = 0; r < B.nrows; ++r) {
    for (std::size_t i = 0; i < M.nrows; ++i) {
      Scalar acc = F.zero();
      for (std::size_t j = 0; j < M.ncols; ++j)
        acc = F.add(acc, F.mul(M.at(i, j), B.at(r, j)));
      S.at(i, r) = F.sub(acc, F.mul(mu, B.at(r, i)));
    }
  }
  Mat kernel = null_space(F, S);  // rows are coefficient vectors c
  std::vector<std::vector<Scalar>> out;
  for (std::size_t t = 0; t < kernel.nrows; ++t) {
    std::vector<Scalar> v(B.ncols, F.zero());
    for (std::size_t r = 0; r < B.nrows; ++r) {
      Scalar c = kernel.at(t, r);
      if (F.is_zero(c)) continue;
      for (std::size_t j = 0; j < B.ncols; ++j)
        v[j] = F.add(v[j], F.mul(c, B.at(r, j)));
    }
    out.push_back(std::move(v));
  }
  Mat result = Mat::from_rows(std::move(out));
  // dependencies among the rows of B reappear here as zero rows; rref
  // sinks them to the bottom, truncation removes them
  std::size_t npiv = rref(F, result).size();
  result.data.resize(npiv * result.ncols);
  result.nrows = npiv;
  return result;
}

}  // namespace lieenv

#endif
