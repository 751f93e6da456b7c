#ifndef LIEENV_WEIGHTS_HPP
#define LIEENV_WEIGHTS_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "env.hpp"
#include "gf.hpp"
#include "liealg.hpp"
#include "linalg.hpp"

namespace lieenv {

struct WindowCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Default bound on window size (number of monomials), overridable through
/// the LIEENV_WINDOW_CAP environment variable.
inline std::size_t default_window_cap() {
  if (const char* s = std::getenv("LIEENV_WINDOW_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

/// Monomial basis of U(S) up to a total degree, for a subalgebra S given
/// inside an ambient Lie algebra. The basis lives over the induced algebra
/// on S's echelon basis; when that basis consists of ambient basis vectors
/// (the aligned case) window monomials translate letter by letter,
/// otherwise translation goes through explicit products.
struct FilteredBasis {
  Subspace sub;
  std::shared_ptr<const LieAlgebra> sub_alg;
  std::uint32_t degree = 0;
  std::vector<Monomial> monomials;
  std::map<Monomial, std::size_t, MonoLess> index;
  bool aligned = false;
  std::vector<std::size_t> ambient_index;  // sub generator -> ambient index

  std::size_t size() const { return monomials.size(); }
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > 4 * cap) return 4 * cap + 1;  // avoid overflow once clearly over
    r = r * (n - k + i) / i;
  }
  return r;
}

inline void enumerate_monomials(std::size_t nvars, std::uint32_t degree,
                                std::vector<Monomial>& out) {
  Monomial cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
    if (pos == nvars) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), MonoLess{});
}

}  // namespace detail

inline FilteredBasis make_filtered_basis(const Subspace& S, std::uint32_t degree,
                                         std::size_t cap = default_window_cap()) {
  if (!S.is_subalgebra())
    throw std::invalid_argument("subspace is not closed under the bracket");
  auto L = S.algebra();
  const Field& F = L->field();
  std::size_t m = S.dim();

  std::uint64_t count = detail::binomial_capped(degree + m, m, cap);
  if (count > cap)
    throw WindowCapError("window of " + std::to_string(count) +
                         " monomials exceeds the cap of " + std::to_string(cap));

  FilteredBasis fb{S, nullptr, degree, {}, {}, true, {}};

  // aligned when every echelon basis row is a single ambient basis vector
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = S.echelon().rows()[i];
    std::size_t nz = 0, pos = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!F.is_zero(row[j])) {
        ++nz;
        pos = j;
      }
    if (nz == 1 && row[pos] == F.one()) {
      fb.ambient_index.push_back(pos);
    } else {
      fb.aligned = false;
    }
  }
  if (!fb.aligned) fb.ambient_index.clear();

  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    if (fb.aligned) {
      names.push_back(L->name(fb.ambient_index[i]));
    } else {
      names.push_back("s" + std::to_string(i + 1));
    }
  }

  // induced structure constants; closure guarantees coordinates exist
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto w = bracket(S.basis_vec(i), S.basis_vec(j));
      auto coords = S.coords_of(w);
      if (!coords) throw std::logic_error("closed subspace failed to resolve a bracket");
      entries.push_back({i, j, std::move(*coords)});
    }
  fb.sub_alg = m > 0 ? LieAlgebra::create(L->field_ptr(), names, entries) : nullptr;
  if (m == 0) {
    // zero subalgebra: the window is the scalars only
    fb.sub_alg = LieAlgebra::create(L->field_ptr(), {"_unit"}, {});
    fb.monomials.push_back(Monomial(1, 0));
    fb.index.emplace(fb.monomials[0], 0);
    fb.aligned = false;
    return fb;
  }

  detail::enumerate_monomials(m, degree, fb.monomials);
  for (std::size_t i = 0; i < fb.monomials.size(); ++i)
    fb.index.emplace(fb.monomials[i], i);
  return fb;
}

/// Matrix of the adjoint action of h on the window, in window coordinates:
/// column j holds the coordinates of ad h applied to monomial j. Requires
/// [h, S] to land back in S; the action then preserves each filtration
/// level, so the matrix captures it exactly.
inline Mat operator_matrix(const LieVec& h, const FilteredBasis& fb) {
  auto L = fb.sub.algebra();
  if (h.alg != L) throw std::invalid_argument("mixed algebras");
  const Field& F = L->field();
  std::size_t m = fb.sub.dim();

  std::vector<LieVec> images;
  for (std::size_t j = 0; j < m; ++j) {
    auto w = bracket(h, fb.sub.basis_vec(j));
    auto coords = fb.sub.coords_of(w);
    if (!coords)
      throw std::invalid_argument("element does not normalize the subalgebra");
    images.push_back(LieVec{fb.sub_alg, std::move(*coords)});
  }

  std::size_t N = fb.size();
  Mat M(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    EnvElement u{fb.sub_alg, {{fb.monomials[j], F.one()}}};
    EnvElement img = derivation_apply(images, u);
    for (const auto& [mm, c] : img.terms) {
      auto it = fb.index.find(mm);
      if (it == fb.index.end())
        throw std::logic_error("adjoint image left the filtration window");
      M.at(it->second, j) = c;
    }
  }
  return M;
}

/// Weight: the tuple of eigenvalues on the subalgebra's echelon basis.
struct Weight {
  std::vector<Scalar> values;

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.values == b.values;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

  bool is_zero(const Field& F) const {
    for (auto v : values)
      if (!F.is_zero(v)) return false;
    return true;
  }

  std::string to_string(const Field& F) const {
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += F.to_string(values[i]);
    }
    return s + ")";
  }
};

inline Weight weight_add(const Field& F, const Weight& a, const Weight& b) {
  Weight w = a;
  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = F.add(w.values[i], b.values[i]);
  return w;
}

struct WeightSpaceReport {
  Weight weight;
  Mat basis;  // reduced echelon rows in window coordinates
};

struct WeightAnalysis {
  FilteredBasis fb;
  std::vector<Mat> ops;  // one adjoint matrix per subalgebra basis vector
  std::vector<WeightSpaceReport> reports;  // eigenvalue tuples in lex order
};

/// All weight spaces of U(S) within the window: simultaneous eigenspaces
/// of the adjoint operators of S's basis, found by restricting one
/// operator at a time and branching over eigenvalues in lexicographic
/// field order. Empty branches are pruned, so only realized weights
/// appear. Directness of the sum is verified before returning.
inline WeightAnalysis enumerate_weights(const Subspace& S, std::uint32_t degree,
                                        std::size_t cap = default_window_cap()) {
  WeightAnalysis an{make_filtered_basis(S, degree, cap), {}, {}};
  const Field& F = S.algebra()->field();
  if (F.q() > (1u << 16))
    throw std::invalid_argument("eigenvalue scan requires field order <= 2^16");
  std::size_t m = S.dim();
  for (std::size_t i = 0; i < m; ++i)
    an.ops.push_back(operator_matrix(S.basis_vec(i), an.fb));

  std::size_t N = an.fb.size();
  Weight tuple{std::vector<Scalar>(m)};
  auto dfs = [&](auto&& self, std::size_t level, const Mat& space) -> void {
    if (space.nrows == 0) return;
    if (level == m) {
      an.reports.push_back({tuple, space});
      return;
    }
    for (std::uint32_t r = 0; r < F.q(); ++r) {
      Scalar mu = F.element_by_rank(r);
      Mat next = eigen_restrict(F, an.ops[level], space, mu);
      if (next.nrows == 0) continue;
      tuple.values[level] = mu;
      self(self, level + 1, next);
    }
  };
  dfs(dfs, 0, Mat::identity(F, N));

  Echelon all(F, N);
  std::size_t total = 0;
  for (const auto& rep : an.reports) {
    total += rep.basis.nrows;
    for (std::size_t r = 0; r < rep.basis.nrows; ++r)
      all.insert(rep.basis.row(r));
  }
  if (all.dim() != total)
    throw std::logic_error("weight spaces failed to sum directly");
  return an;
}

struct CenterResult {
  FilteredBasis fb;
  WeightSpaceReport report;
};

/// Weight-zero space only: successive kernels, no eigenvalue scan.
inline CenterResult center_basis(const Subspace& S, std::uint32_t degree,
                                 std::size_t cap = default_window_cap()) {
  CenterResult out{make_filtered_basis(S, degree, cap), {}};
  const Field& F = S.algebra()->field();
  std::size_t m = S.dim();
  Mat space = Mat::identity(F, out.fb.size());
  for (std::size_t i = 0; i < m; ++i) {
    Mat op = operator_matrix(S.basis_vec(i), out.fb);
    space = eigen_restrict(F, op, space, F.zero());
    if (space.nrows == 0) break;
  }
  out.report = {Weight{std::vector<Scalar>(m)}, std::move(space)};
  return out;
}

inline WeightAnalysis semicenter_basis(const Subspace& S, std::uint32_t degree,
                                       std::size_t cap = default_window_cap()) {
  return enumerate_weights(S, degree, cap);
}

/// Translation between ambient enveloping-algebra elements and window
/// coordinates. In the aligned case monomials map letter by letter; in
/// general each window monomial is expanded to its ambient normal form
/// once and membership goes through span solving.
class WindowCoords {
public:
  explicit WindowCoords(const FilteredBasis& fb) : fb_(&fb) {
    const Field& F = fb.sub.algebra()->field();
    if (fb.aligned) {
      amb_to_sub_.assign(fb.sub.algebra()->dim(), SIZE_MAX);
      for (std::size_t t = 0; t < fb.ambient_index.size(); ++t)
        amb_to_sub_[fb.ambient_index[t]] = t;
      return;
    }
    // ambient normal forms of every window monomial
    auto L = fb.sub.algebra();
    ambient_forms_.reserve(fb.size());
    for (const auto& mono : fb.monomials) {
      EnvElement prod = env_one(L);
      for (std::size_t t = 0; t < mono.size(); ++t)
        for (std::uint32_t e = 0; e < mono[t]; ++e)
          prod = env_mul(prod, env_embed(fb.sub.basis_vec(t)));
      ambient_forms_.push_back(std::move(prod));
    }
    for (const auto& f : ambient_forms_)
      for (const auto& [m, c] : f.terms) {
        (void)c;
        if (!amb_index_.count(m)) {
          std::size_t id = amb_index_.size();
          amb_index_.emplace(m, id);
        }
      }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& f : ambient_forms_) {
      std::vector<Scalar> row(amb_index_.size(), F.zero());
      for (const auto& [m, c] : f.terms) row[amb_index_.at(m)] = c;
      rows.push_back(std::move(row));
    }
    solver_ = std::make_unique<SpanSolver>(F, rows, amb_index_.size());
    if (solver_->dim() != fb.size())
      throw std::logic_error("window monomials are not independent");
  }

  /// Window coordinates of an ambient element, if it lies in the span of
  /// the window monomials (i.e. in U(S) up to the window degree).
  std::optional<std::vector<Scalar>> to_window(const EnvElement& u) const {
    const FilteredBasis& fb = *fb_;
    const Field& F = fb.sub.algebra()->field();
    if (u.alg != fb.sub.algebra()) throw std::invalid_argument("mixed algebras");
    if (fb.aligned) {
      std::vector<Scalar> coords(fb.size(), F.zero());
      for (const auto& [m, c] : u.terms) {
        Monomial sub(fb.ambient_index.size(), 0);
        for (std::size_t j = 0; j < m.size(); ++j) {
          if (m[j] == 0) continue;
          if (amb_to_sub_[j] == SIZE_MAX) return std::nullopt;
          sub[amb_to_sub_[j]] = m[j];
        }
        auto it = fb.index.find(sub);
        if (it == fb.index.end()) return std::nullopt;  // degree too high
        coords[it->second] = c;
      }
      return coords;
    }
    std::vector<Scalar> vec(amb_index_.size(), F.zero());
    for (const auto& [m, c] : u.terms) {
      auto it = amb_index_.find(m);
      if (it == amb_index_.end()) return std::nullopt;
      vec[it->second] = c;
    }
    return solver_->coords(vec);
  }

  EnvElement from_window(const std::vector<Scalar>& coords) const {
    const FilteredBasis& fb = *fb_;
    auto L = fb.sub.algebra();
    const Field& F = L->field();
    if (coords.size() != fb.size()) throw std::invalid_argument("coordinate length mismatch");
    if (fb.aligned) {
      TermMap terms;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (F.is_zero(coords[i])) continue;
        Monomial amb(L->dim(), 0);
        for (std::size_t t = 0; t < fb.ambient_index.size(); ++t)
          amb[fb.ambient_index[t]] = fb.monomials[i][t];
        terms.emplace(std::move(amb), coords[i]);
      }
      return {L, std::move(terms)};
    }
    EnvElement out = env_zero(L);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!F.is_zero(coords[i]))
        out = env_add(out, env_scale(coords[i], ambient_forms_[i]));
    return out;
  }

private:
  const FilteredBasis* fb_;
  std::vector<std::size_t> amb_to_sub_;
  std::vector<EnvElement> ambient_forms_;
  std::map<Monomial, std::size_t, MonoLess> amb_index_;
  std::unique_ptr<SpanSolver> solver_;
};

/// The weight of a under the adjoint action of S, if a is a simultaneous
/// eigenvector of every basis element of S. Exact, no window involved.
inline std::optional<Weight> is_semiinvariant(const EnvElement& a, const Subspace& S) {
  if (a.is_zero()) throw std::invalid_argument("the zero element has no weight");
  if (a.alg != S.algebra()) throw std::invalid_argument("mixed algebras");
  const Field& F = a.alg->field();
  Weight w{std::vector<Scalar>(S.dim())};
  const auto& [lead_mono, lead_coeff] = *a.terms.begin();
  for (std::size_t i = 0; i < S.dim(); ++i) {
    EnvElement u = ad_apply(S.basis_vec(i), a);
    Scalar lam = F.zero();
    if (!u.is_zero()) {
      auto it = u.terms.find(lead_mono);
      if (it == u.terms.end()) return std::nullopt;
      lam = F.mul(it->second, F.inv(lead_coeff));
    }
    if (!(u == env_scale(lam, a))) return std::nullopt;
    w.values[i] = lam;
  }
  return w;
}

struct ProductSemiinvariance {
  EnvElement product;
  std::optional<Weight> weight_a, weight_b, weight_product;
  /// "ab semi-invariant implies a and b semi-invariant", on this instance.
  bool condition_holds = false;
  /// When all three weights exist: weight(ab) = weight(a) + weight(b).
  std::optional<bool> weights_add;
};

inline ProductSemiinvariance check_product_semiinvariance(const EnvElement& a,
                                                          const EnvElement& b,
                                                          const Subspace& S) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("the zero element has no weight");
  ProductSemiinvariance out;
  out.product = env_mul(a, b);
  out.weight_a = is_semiinvariant(a, S);
  out.weight_b = is_semiinvariant(b, S);
  if (!out.product.is_zero()) out.weight_product = is_semiinvariant(out.product, S);
  out.condition_holds =
      !out.weight_product.has_value() ||
      (out.weight_a.has_value() && out.weight_b.has_value());
  if (out.weight_product && out.weight_a && out.weight_b) {
    const Field& F = a.alg->field();
    out.weights_add =
        (*out.weight_product == weight_add(F, *out.weight_a, *out.weight_b));
  }
  return out;
}

/// Does u lie in the span of all computed weight spaces of the analysis?
/// Returns false also when u fails to lie in the window at all.
inline bool in_semicenter_window(const WeightAnalysis& an, const EnvElement& u) {
  WindowCoords wc(an.fb);
  auto coords = wc.to_window(u);
  if (!coords) return false;
  const Field& F = an.fb.sub.algebra()->field();
  Echelon all(F, an.fb.size());
  for (const auto& rep : an.reports)
    for (std::size_t r = 0; r < rep.basis.nrows; ++r) all.insert(rep.basis.row(r));
  return all.contains(*coords);
}

struct GenerationReport {
  bool equal = false;
  std::size_t generated_dim = 0, target_dim = 0;
  // per weight: (weight, generated dimension, target dimension)
  std::vector<std::pair<Weight, std::pair<std::size_t, std::size_t>>> per_weight;
};

/// Compares the span of all products of the generators (total degree
/// capped by the window) against the computed center, semicenter, or a
/// single weight space. Generators must be semi-invariant; the generated
/// span is tracked one weight at a time, closing under right
/// multiplication starting from 1.
inline GenerationReport verify_generation_at_degree(
    const std::vector<EnvElement>& gens, const Subspace& S,
    const std::optional<Weight>& target, std::uint32_t degree,
    std::size_t cap = default_window_cap()) {
  WeightAnalysis an = enumerate_weights(S, degree, cap);
  const Field& F = S.algebra()->field();
  WindowCoords wc(an.fb);

  struct Gen {
    EnvElement e;
    Weight w;
  };
  std::vector<Gen> usable;
  for (const auto& g : gens) {
    if (g.is_zero()) throw std::invalid_argument("the zero element has no weight");
    auto w = is_semiinvariant(g, S);
    if (!w) throw std::invalid_argument("generator is not semi-invariant");
    if (*g.degree() > degree) continue;  // cannot contribute inside the window
    if (!wc.to_window(g))
      throw std::invalid_argument("generator lies outside the window");
    usable.push_back({g, *w});
  }

  // weight-graded span closure under right multiplication by generators
  struct Cell {
    Echelon ech;
  };
  std::map<std::vector<std::uint32_t>, Cell> cells;  // keyed by value ranks
  auto key_of = [&](const Weight& w) {
    std::vector<std::uint32_t> k;
    for (auto v : w.values) k.push_back(F.rank_of(v));
    return k;
  };
  auto cell_of = [&](const Weight& w) -> Cell& {
    auto k = key_of(w);
    auto it = cells.find(k);
    if (it == cells.end())
      it = cells.emplace(k, Cell{Echelon(F, an.fb.size())}).first;
    return it->second;
  };

  std::vector<std::pair<EnvElement, Weight>> work;
  EnvElement unit = env_one(S.algebra());
  Weight zero_w{std::vector<Scalar>(S.dim())};
  cell_of(zero_w).ech.insert(*wc.to_window(unit));
  work.emplace_back(unit, zero_w);
  while (!work.empty()) {
    auto [elem, w] = std::move(work.back());
    work.pop_back();
    for (const auto& g : usable) {
      EnvElement prod = env_mul(elem, g.e);
      if (prod.is_zero()) continue;
      if (*prod.degree() > degree) continue;
      auto coords = wc.to_window(prod);
      if (!coords) throw std::logic_error("generated product left the window");
      Weight pw = weight_add(F, w, g.w);
      if (cell_of(pw).ech.insert(std::move(*coords))) work.emplace_back(prod, pw);
    }
  }

  GenerationReport rep;
  for (const auto& r : an.reports) {
    bool in_target = !target || *target == r.weight;
    if (!in_target) continue;
    auto k = key_of(r.weight);
    std::size_t gen_dim = 0;
    auto it = cells.find(k);
    Echelon target_ech(F, an.fb.size());
    for (std::size_t i = 0; i < r.basis.nrows; ++i) target_ech.insert(r.basis.row(i));
    if (it != cells.end()) {
      gen_dim = it->second.ech.dim();
      for (const auto& row : it->second.ech.rows())
        if (!target_ech.contains(row))
          throw std::logic_error("generated span escaped its weight space");
    }
    rep.per_weight.push_back({r.weight, {gen_dim, r.basis.nrows}});
    rep.generated_dim += gen_dim;
    rep.target_dim += r.basis.nrows;
  }
  rep.equal = rep.generated_dim == rep.target_dim;
  return rep;
}

}  // namespace lieenv

#endif
