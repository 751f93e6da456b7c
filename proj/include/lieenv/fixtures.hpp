#ifndef LIEENV_FIXTURES_HPP
#define LIEENV_FIXTURES_HPP

#include "algfile.hpp"

namespace lieenv {
namespace fixtures {

/// Five-dimensional solvable algebra over F_3 whose codimension-one ideal
/// H = <y,e1,e2,e3> carries weight spaces that ad x fails to stabilize.
/// The named elements drive the worked checks in the reproduction suite.
inline const char* unstable_weights() {
  return R"(# five-dimensional solvable algebra over F_3 with unstable weight spaces
[field]
p = 3

[basis]
x y e1 e2 e3

[brackets]
x,y = 2*y
x,e2 = e2
x,e3 = 2*e3
y,e1 = e3
y,e2 = e1
y,e3 = e2

[subspaces]
K = e1,e2,e3
H = y,e1,e2,e3

[elements]
u = e1 + e2 + e3
v = e2^2 + e1*e3 + 2*e2*e3 + 2*e3^2
w_printed = e1*e2^2 + e1^2*e3 + e2*e3^2 + e2^3 + e3^3
xcube = x^3 - x
ynine = y^9 - y^3
)";
}

/// Four-dimensional algebra over F_3 where a power of a non-invariant
/// element is invariant: y is not in the weight-zero space of U(L) but
/// y^3 is, so invariance of a product does not pass to its factors.
inline const char* power_invariance() {
  return R"(# power of a non-invariant element landing in the weight-zero space
[field]
p = 3

[basis]
x y z t

[brackets]
x,y = y
x,z = 2*z
y,z = t
)";
}

/// Four-dimensional algebra whose ideal H = <y,u1,u2> has all its weight
/// spaces stable under ad x even though u2 is not semi-invariant for the
/// whole algebra: stability does not force semi-invariance pointwise.
inline const char* stable_but_not_semiinvariant() {
  return R"(# stable weight spaces containing non-semi-invariant vectors
[field]
p = 3

[basis]
x y u1 u2

[brackets]
x,u2 = u1
y,u1 = u1
y,u2 = u2

[subspaces]
H = y,u1,u2
)";
}

/// Same structure constants over F_9 = F_3[t]/(t^2+1); the computed
/// weights are rational over the prime field, so every verdict matches
/// the base-field run while exercising extension arithmetic.
inline std::string unstable_weights_ext() {
  std::string s = unstable_weights();
  auto pos = s.find("p = 3\n");
  s.insert(pos + 6, "modulus = 1,0,1\n");
  return s;
}

inline AlgebraFile load_unstable_weights() { return parse_algebra_file(unstable_weights()); }
inline AlgebraFile load_unstable_weights_ext() {
  return parse_algebra_file(unstable_weights_ext());
}
inline AlgebraFile load_power_invariance() { return parse_algebra_file(power_invariance()); }
inline AlgebraFile load_stable_but_not_semiinvariant() {
  return parse_algebra_file(stable_but_not_semiinvariant());
}

}  // namespace fixtures
}  // namespace lieenv

#endif
