#ifndef LIEENV_STABILITY_HPP
#define LIEENV_STABILITY_HPP

#include <cstdint>
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
#include "weights.hpp"

namespace lieenv {

/// L split as an ideal H plus a complement spanning the rest. The
/// complement is a list of vectors (usually one: the codimension-one
/// case), and stability questions quantify over them; the ideal itself
/// acts on its own weight spaces by scalars, so it never destabilizes.
struct Decomposition {
  std::shared_ptr<const LieAlgebra> L;
  Subspace H;
  std::vector<LieVec> complement;

  std::size_t codim() const { return complement.size(); }

  static Decomposition make(const Subspace& H, std::vector<LieVec> complement) {
    auto L = H.algebra();
    Subspace full = Subspace::full(L);
    if (!is_ideal(H, full))
      throw std::invalid_argument("subspace is not an ideal of the algebra");
    Subspace span = H;
    for (const auto& x : complement) {
      if (x.alg != L) throw std::invalid_argument("mixed algebras");
      if (!span.insert(x))
        throw std::invalid_argument("complement vector lies in the span of the ideal");
    }
    if (span.dim() != L->dim())
      throw std::invalid_argument("ideal and complement do not span the algebra");
    return {L, H, std::move(complement)};
  }

  /// Completes H with ambient basis vectors, taken in basis order.
  static Decomposition with_auto_complement(const Subspace& H) {
    auto L = H.algebra();
    Subspace span = H;
    std::vector<LieVec> comp;
    for (std::size_t i = 0; i < L->dim() && span.dim() < L->dim(); ++i) {
      LieVec v = L->basis_vec(i);
      if (span.insert(v)) comp.push_back(v);
    }
    return make(H, std::move(comp));
  }
};

/// Codimension-one ideal containing [L,L] (automatically an ideal, since
/// the quotient is abelian), completed with ambient basis vectors; the
/// first leftover basis vector becomes the complement.
inline Decomposition codim1_decomposition(std::shared_ptr<const LieAlgebra> L) {
  Subspace H = derived_algebra(Subspace::full(L));
  if (H.dim() == L->dim())
    throw std::invalid_argument("derived algebra is the whole algebra");
  for (std::size_t i = 0; i < L->dim() && H.dim() + 1 < L->dim(); ++i)
    H.insert(L->basis_vec(i));
  return Decomposition::with_auto_complement(H);
}

struct StabilityWitness {
  EnvElement element;    // weight vector taken outside its space
  EnvElement image;      // ad x applied to it
  EnvElement offending;  // residual of the image outside the span
  LieVec x;

  std::string to_string() const {
    return "ad(" + x.to_string() + ") maps " + element.to_string() + " to " +
           image.to_string() + "; residual outside the space: " +
           offending.to_string();
  }
};

struct StableCheck {
  bool stable = true;
  std::optional<StabilityWitness> witness;
};

namespace detail {

/// Is the row space (given in window coordinates, reduced) preserved by
/// the operator M? On failure returns the first offending basis vector.
inline StableCheck space_preserved(const Field& F, const Mat& M, const Mat& rows,
                                   const WindowCoords& wc, const LieVec& x) {
  Echelon ech(F, M.ncols);
  for (std::size_t r = 0; r < rows.nrows; ++r) ech.insert(rows.row(r));
  for (std::size_t r = 0; r < rows.nrows; ++r) {
    std::vector<Scalar> img = mat_vec(F, M, rows.row(r));
    if (!ech.contains(img)) {
      StabilityWitness wit{wc.from_window(rows.row(r)), wc.from_window(img),
                           wc.from_window(ech.reduce(img)), x};
      return {false, std::move(wit)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace detail

/// Stability of one weight space under every complement vector of the
/// decomposition: ad x must map the space into itself.
inline StableCheck is_stable(const Decomposition& dec, const WeightAnalysis& an,
                             const WeightSpaceReport& rep) {
  const Field& F = dec.L->field();
  WindowCoords wc(an.fb);
  for (const auto& x : dec.complement) {
    Mat M = operator_matrix(x, an.fb);
    StableCheck c = detail::space_preserved(F, M, rep.basis, wc, x);
    if (!c.stable) return c;
  }
  return {true, std::nullopt};
}

/// Independent confirmation of a witness: recomputes the image from the
/// ambient elements and decides span membership by a fresh elimination
/// (plain rref ranks, not the echelon incremental path).
inline bool witness_confirm(const WeightAnalysis& an, const Mat& space_rows,
                            const StabilityWitness& wit) {
  const Field& F = an.fb.sub.algebra()->field();
  WindowCoords wc(an.fb);
  EnvElement image = ad_apply(wit.x, wit.element);
  auto coords = wc.to_window(image);
  if (!coords) return true;  // image even left the window: certainly outside
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t r = 0; r < space_rows.nrows; ++r) rows.push_back(space_rows.row(r));
  std::size_t base = rank(F, Mat::from_rows(rows));
  rows.push_back(*coords);
  std::size_t extended = rank(F, Mat::from_rows(rows));
  return extended == base + 1;
}

struct LambdaOnDerived {
  std::vector<Scalar> values;  // one per basis vector of [L,L]
  bool all_zero = true;
};

/// Values of the weight on a basis of [L,L]; requires [L,L] inside the
/// ideal, since the weight is only defined there.
inline LambdaOnDerived lambda_on_derived(const Decomposition& dec, const Weight& w) {
  const Field& F = dec.L->field();
  Subspace D = derived_algebra(Subspace::full(dec.L));
  LambdaOnDerived out;
  for (std::size_t i = 0; i < D.dim(); ++i) {
    auto coords = dec.H.coords_of(D.basis_vec(i));
    if (!coords)
      throw std::invalid_argument("derived algebra is not contained in the ideal");
    Scalar v = F.zero();
    for (std::size_t t = 0; t < coords->size(); ++t)
      v = F.add(v, F.mul((*coords)[t], w.values[t]));
    if (!F.is_zero(v)) out.all_zero = false;
    out.values.push_back(v);
  }
  return out;
}

struct WeightVerdict {
  Weight weight;
  bool stable = true;
  std::optional<StabilityWitness> witness;
  std::optional<bool> lambda_derived_zero;  // absent when [L,L] is not inside H
};

struct StabilityReport {
  WeightAnalysis analysis;
  std::vector<WeightVerdict> verdicts;
  bool semicenter_stable = true;
  std::optional<StabilityWitness> semicenter_witness;
};

inline StabilityReport stability_report(const Decomposition& dec, std::uint32_t degree,
                                        std::size_t cap = default_window_cap()) {
  const Field& F = dec.L->field();
  StabilityReport out{enumerate_weights(dec.H, degree, cap), {}, true, std::nullopt};
  const WeightAnalysis& an = out.analysis;
  WindowCoords wc(an.fb);

  bool derived_in_H = true;
  {
    Subspace D = derived_algebra(Subspace::full(dec.L));
    for (std::size_t i = 0; i < D.dim() && derived_in_H; ++i)
      if (!dec.H.contains(D.basis_vec(i))) derived_in_H = false;
  }

  std::vector<Mat> xmats;
  for (const auto& x : dec.complement) xmats.push_back(operator_matrix(x, an.fb));

  for (const auto& rep : an.reports) {
    WeightVerdict v{rep.weight, true, std::nullopt, std::nullopt};
    for (std::size_t xi = 0; xi < xmats.size() && v.stable; ++xi) {
      StableCheck c = detail::space_preserved(F, xmats[xi], rep.basis, wc,
                                              dec.complement[xi]);
      if (!c.stable) {
        v.stable = false;
        v.witness = std::move(c.witness);
      }
    }
    if (derived_in_H)
      v.lambda_derived_zero = lambda_on_derived(dec, rep.weight).all_zero;
    out.verdicts.push_back(std::move(v));
  }

  // the semicenter window: union of all weight spaces
  std::vector<std::vector<Scalar>> all_rows;
  for (const auto& rep : an.reports)
    for (std::size_t r = 0; r < rep.basis.nrows; ++r) all_rows.push_back(rep.basis.row(r));
  Mat sz = Mat::from_rows(all_rows);
  rref(F, sz);
  for (std::size_t xi = 0; xi < xmats.size() && out.semicenter_stable; ++xi) {
    StableCheck c = detail::space_preserved(F, xmats[xi], sz, wc, dec.complement[xi]);
    if (!c.stable) {
      out.semicenter_stable = false;
      out.semicenter_witness = std::move(c.witness);
    }
  }
  return out;
}

/// Thrown when one of the cross-validators finds its two sides in
/// disagreement; carries a serialized counterexample bundle pointing at
/// the implementation inputs that produced it.
struct ValidatorViolation : std::runtime_error {
  std::string bundle;
  ValidatorViolation(const std::string& msg, std::string b)
      : std::runtime_error(msg + "\n" + b), bundle(std::move(b)) {}
};

inline std::string describe_algebra(const LieAlgebra& A) {
  const Field& F = A.field();
  std::string s = "p = " + std::to_string(F.p());
  if (F.k() > 1) {
    s += ", modulus =";
    for (auto c : F.modulus()) s += " " + std::to_string(c);
  }
  s += "\nbasis:";
  for (const auto& n : A.names()) s += " " + n;
  s += "\n";
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i + 1; j < A.dim(); ++j) {
      LieVec w{A.shared_from_this(), A.bracket_basis(i, j)};
      if (!w.is_zero())
        s += "[" + A.name(i) + "," + A.name(j) + "] = " + w.to_string() + "\n";
    }
  return s;
}

inline std::string describe_decomposition(const Decomposition& dec) {
  std::string s = "ideal basis:";
  for (std::size_t i = 0; i < dec.H.dim(); ++i)
    s += " (" + dec.H.basis_vec(i).to_string() + ")";
  s += "\ncomplement:";
  for (const auto& x : dec.complement) s += " (" + x.to_string() + ")";
  return s + "\n";
}

struct EquivalenceReport {
  bool hypothesis_met = true;
  bool holds = true;
  std::vector<std::string> details;
};

namespace detail {

inline std::string violation_bundle(const Decomposition& dec, std::uint32_t degree,
                                    const std::string& extra) {
  return describe_algebra(*dec.L) + describe_decomposition(dec) +
         "degree = " + std::to_string(degree) + "\n" + extra;
}

}  // namespace detail

/// Codimension-one criterion: a weight space is stable under the single
/// complement vector exactly when the weight vanishes on [L,L].
inline EquivalenceReport validate_codim1_equivalence(
    const Decomposition& dec, std::uint32_t degree,
    std::size_t cap = default_window_cap()) {
  if (dec.codim() != 1)
    throw std::invalid_argument("requires a codimension-one ideal");
  const Field& F = dec.L->field();
  StabilityReport rep = stability_report(dec, degree, cap);
  EquivalenceReport out;
  for (const auto& v : rep.verdicts) {
    if (!v.lambda_derived_zero.has_value())
      throw std::logic_error("codimension-one ideal must contain the derived algebra");
    bool lhs = v.stable, rhs = *v.lambda_derived_zero;
    out.details.push_back("weight " + v.weight.to_string(F) + ": stable=" +
                          (lhs ? "yes" : "no") + ", vanishes on [L,L]=" +
                          (rhs ? "yes" : "no"));
    if (lhs != rhs) {
      std::string extra = "weight " + v.weight.to_string(F) + " stable=" +
                          (lhs ? "yes" : "no") + " but vanishing=" +
                          (rhs ? "yes" : "no") + "\n";
      if (v.witness) extra += v.witness->to_string() + "\n";
      throw ValidatorViolation("stability and derived-vanishing disagree",
                               detail::violation_bundle(dec, degree, extra));
    }
  }
  return out;
}

/// The semicenter window is stable under a complement vector exactly when
/// every single weight space is; checked for each complement vector.
inline EquivalenceReport validate_semicenter_equivalence(
    const Decomposition& dec, std::uint32_t degree,
    std::size_t cap = default_window_cap()) {
  const Field& F = dec.L->field();
  WeightAnalysis an = enumerate_weights(dec.H, degree, cap);
  WindowCoords wc(an.fb);
  std::vector<std::vector<Scalar>> all_rows;
  for (const auto& rep : an.reports)
    for (std::size_t r = 0; r < rep.basis.nrows; ++r) all_rows.push_back(rep.basis.row(r));
  Mat sz = Mat::from_rows(all_rows);
  rref(F, sz);

  EquivalenceReport out;
  for (const auto& x : dec.complement) {
    Mat M = operator_matrix(x, an.fb);
    bool each = true;
    std::optional<StabilityWitness> each_wit;
    for (const auto& rep : an.reports) {
      StableCheck c = detail::space_preserved(F, M, rep.basis, wc, x);
      if (!c.stable) {
        each = false;
        each_wit = std::move(c.witness);
        break;
      }
    }
    StableCheck whole = detail::space_preserved(F, M, sz, wc, x);
    out.details.push_back("x = " + x.to_string() + ": semicenter stable=" +
                          (whole.stable ? "yes" : "no") + ", every weight space stable=" +
                          (each ? "yes" : "no"));
    if (whole.stable != each) {
      std::string extra = out.details.back() + "\n";
      if (each_wit) extra += each_wit->to_string() + "\n";
      if (whole.witness) extra += whole.witness->to_string() + "\n";
      throw ValidatorViolation("semicenter and per-weight stability disagree",
                               detail::violation_bundle(dec, degree, extra));
    }
  }
  return out;
}

/// With [L,L] nilpotent, every weight space must be stable under every
/// complement vector. Vacuous (hypothesis_met = false) otherwise.
inline EquivalenceReport validate_nilpotent_stability(
    const Decomposition& dec, std::uint32_t degree,
    std::size_t cap = default_window_cap()) {
  EquivalenceReport out;
  Subspace D = derived_algebra(Subspace::full(dec.L));
  if (!is_nilpotent(D)) {
    out.hypothesis_met = false;
    out.details.push_back("[L,L] is not nilpotent; nothing to check");
    return out;
  }
  StabilityReport rep = stability_report(dec, degree, cap);
  for (const auto& v : rep.verdicts) {
    out.details.push_back("weight " + v.weight.to_string(dec.L->field()) +
                          ": stable=" + (v.stable ? "yes" : "no"));
    if (!v.stable) {
      std::string extra = out.details.back() + "\n";
      if (v.witness) extra += v.witness->to_string() + "\n";
      throw ValidatorViolation("nilpotent derived algebra but an unstable weight space",
                               detail::violation_bundle(dec, degree, extra));
    }
  }
  return out;
}

/// With [L,L] inside H: the semicenter window is stable under all
/// complement vectors exactly when every realized weight vanishes on
/// [L,L]. Vacuous when [L,L] is not inside H.
inline EquivalenceReport validate_derived_vanishing_equivalence(
    const Decomposition& dec, std::uint32_t degree,
    std::size_t cap = default_window_cap()) {
  EquivalenceReport out;
  {
    Subspace D = derived_algebra(Subspace::full(dec.L));
    for (std::size_t i = 0; i < D.dim(); ++i)
      if (!dec.H.contains(D.basis_vec(i))) {
        out.hypothesis_met = false;
        out.details.push_back("[L,L] is not contained in the ideal; nothing to check");
        return out;
      }
  }
  StabilityReport rep = stability_report(dec, degree, cap);
  bool all_vanish = true;
  for (const auto& v : rep.verdicts)
    if (!v.lambda_derived_zero.value_or(false)) all_vanish = false;
  out.details.push_back(std::string("semicenter stable=") +
                        (rep.semicenter_stable ? "yes" : "no") +
                        ", all weights vanish on [L,L]=" + (all_vanish ? "yes" : "no"));
  if (rep.semicenter_stable != all_vanish) {
    std::string extra = out.details.back() + "\n";
    if (rep.semicenter_witness) extra += rep.semicenter_witness->to_string() + "\n";
    throw ValidatorViolation("semicenter stability and weight vanishing disagree",
                             detail::violation_bundle(dec, degree, extra));
  }
  return out;
}

}  // namespace lieenv

#endif
