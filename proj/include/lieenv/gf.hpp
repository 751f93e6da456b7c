#ifndef LIEENV_GF_HPP
#define LIEENV_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieenv {

/// Element of a finite field, packed as c0 + c1*p + ... + c_{k-1}*p^{k-1}.
/// Valid values are exactly those < q; all arithmetic goes through Field.
struct Scalar {
  std::uint32_t v = 0;
  friend bool operator==(Scalar a, Scalar b) { return a.v == b.v; }
  friend bool operator!=(Scalar a, Scalar b) { return a.v != b.v; }
};

/// F_p for prime p, or F_{p^k} as F_p[t]/(modulus) for a monic irreducible
/// modulus of degree k (coefficients constant-term first).
///
/// Field order is capped at 2^20; irreducibility is checked by exhaustive
/// trial division, which is cheap at that scale.
class Field {
public:
  static constexpr std::uint64_t max_order = 1u << 20;

  explicit Field(std::uint32_t p) : Field(p, {}) {}

  Field(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (modulus.empty()) {
      k_ = 1;
      modulus_ = {0, 1};  // t - 0, unused for k = 1
    } else {
      if (modulus.size() < 2) throw std::invalid_argument("extension modulus must have degree >= 1");
      k_ = static_cast<std::uint32_t>(modulus.size() - 1);
      for (auto c : modulus)
        if (c >= p) throw std::invalid_argument("modulus coefficient not reduced mod p");
      if (modulus.back() != 1) throw std::invalid_argument("extension modulus must be monic");
      modulus_ = std::move(modulus);
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      q *= p_;
      if (q > max_order) throw std::invalid_argument("field order exceeds 2^20");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (k_ > 1 && !is_irreducible(modulus_))
      throw std::invalid_argument("extension modulus is reducible over F_p");
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_spec(const Field& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

  Scalar zero() const { return {0}; }
  Scalar one() const { return {1}; }
  bool is_zero(Scalar a) const { return a.v == 0; }

  /// Embeds an integer via reduction mod p (constant coefficient).
  Scalar from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  /// Builds the canonical residue from polynomial coefficients, constant
  /// term first. Fewer than k coefficients are padded with zeros.
  Scalar make(const std::vector<std::int64_t>& coeffs) const {
    if (coeffs.size() > k_)
      throw std::invalid_argument("coefficient list longer than extension degree");
    std::uint32_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      std::int64_t r = coeffs[i] % static_cast<std::int64_t>(p_);
      if (r < 0) r += p_;
      v = v * p_ + static_cast<std::uint32_t>(r);
    }
    return {v};
  }

  /// Polynomial coefficients of the residue, constant term first, length k.
  std::vector<std::uint32_t> coeffs(Scalar a) const {
    std::vector<std::uint32_t> c(k_);
    std::uint32_t v = a.v;
    for (std::uint32_t i = 0; i < k_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  }

  Scalar add(Scalar a, Scalar b) const {
    if (k_ == 1) {
      std::uint32_t s = a.v + b.v;
      return {s >= p_ ? s - p_ : s};
    }
    std::uint32_t v = 0, pow = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t da = a.v / pow % p_, db = b.v / pow % p_;
      std::uint32_t s = da + db;
      if (s >= p_) s -= p_;
      v += s * pow;
      pow *= p_;
    }
    return {v};
  }

  Scalar neg(Scalar a) const {
    if (k_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
    std::uint32_t v = 0, pow = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t d = a.v / pow % p_;
      v += (d == 0 ? 0 : p_ - d) * pow;
      pow *= p_;
    }
    return {v};
  }

  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

  Scalar mul(Scalar a, Scalar b) const {
    if (k_ == 1)
      return {static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    auto ca = coeffs(a), cb = coeffs(b);
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (ca[i] == 0) continue;
      for (std::uint32_t j = 0; j < k_; ++j)
        prod[i + j] += std::uint64_t(ca[i]) * cb[j];
    }
    // reduce from the top using the monic modulus
    for (std::size_t i = prod.size(); i-- > k_;) {
      std::uint64_t c = prod[i] % p_;
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < k_; ++j)
        prod[i - k_ + j] += c * (p_ - modulus_[j] % p_);
    }
    std::uint32_t v = 0;
    for (std::uint32_t i = k_; i-- > 0;)
      v = v * p_ + static_cast<std::uint32_t>(prod[i] % p_);
    return {v};
  }

  /// a^n by square-and-multiply; a^0 = 1 for every a (empty product).
  Scalar pow(Scalar a, std::uint64_t n) const {
    Scalar r = one(), base = a;
    while (n > 0) {
      if (n & 1) r = mul(r, base);
      base = mul(base, base);
      n >>= 1;
    }
    return r;
  }

  Scalar inv(Scalar a) const {
    if (a.v == 0) throw std::invalid_argument("inversion of zero");
    return pow(a, q_ - 2);  // a^(q-1) = 1 for a != 0
  }

  /// r-th field element in lexicographic coefficient order: ranks compare
  /// the coefficient lists (c0, c1, ...) left to right.
  Scalar element_by_rank(std::uint32_t r) const {
    // digits of r base p, most significant digit = constant coefficient
    std::vector<std::uint32_t> digits(k_);
    for (std::uint32_t i = k_; i-- > 0;) {
      digits[i] = r % p_;
      r /= p_;
    }
    std::uint32_t v = 0;
    for (std::uint32_t i = k_; i-- > 0;) v = v * p_ + digits[i];
    return {v};
  }

  std::uint32_t rank_of(Scalar a) const {
    auto c = coeffs(a);
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) r = r * p_ + c[i];
    return r;
  }

  std::string to_string(Scalar a) const {
    if (k_ == 1) return std::to_string(a.v);
    auto c = coeffs(a);
    std::string s = "(";
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; std::uint64_t(d) * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

private:
  // divisibility of the modulus by a monic divisor, both constant-first
  bool divides(const std::vector<std::uint32_t>& divisor,
               std::vector<std::uint32_t> rem) const {
    std::size_t dd = divisor.size() - 1;
    while (rem.size() > dd) {
      std::uint32_t lead = rem.back();
      if (lead != 0) {
        std::size_t shift = rem.size() - 1 - dd;
        for (std::size_t j = 0; j <= dd; ++j) {
          std::uint64_t sub = std::uint64_t(lead) * divisor[j] % p_;
          std::uint32_t& c = rem[shift + j];
          c = static_cast<std::uint32_t>((c + p_ - sub) % p_);
        }
      }
      rem.pop_back();
    }
    for (auto c : rem)
      if (c != 0) return false;
    return true;
  }

  bool is_irreducible(const std::vector<std::uint32_t>& m) const {
    std::uint32_t deg = static_cast<std::uint32_t>(m.size() - 1);
    // enumerate monic divisors of degree 1..deg/2
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> div(d + 1);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < d; ++i) {
          div[i] = static_cast<std::uint32_t>(t % p_);
          t /= p_;
        }
        div[d] = 1;
        if (divides(div, m)) return false;
      }
    }
    return true;
  }

  std::uint32_t p_ = 0, k_ = 1, q_ = 0;
  std::vector<std::uint32_t> modulus_;
};

}  // namespace lieenv

#endif
