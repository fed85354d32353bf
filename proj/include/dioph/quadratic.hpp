#pragma once

#include <algorithm>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Exactly the rational roots of a2 t^2 + a1 t + a0 = 0, deduplicated,
// ascending. Irrational roots are never produced: after clearing
// denominators the discriminant must be a perfect square for a root to be
// rational, and only those are extracted. All-zero input has no defined
// root set.
inline std::vector<Rational> solve_quadratic_exact(const Rational& a2, const Rational& a1,
                                                   const Rational& a0) {
  if (sgn(a2) == 0 && sgn(a1) == 0 && sgn(a0) == 0)
    throw DegenerateEquationError("solve_quadratic_exact: identically zero equation");

  // clear denominators: multiply by lcm of the three
  BigInt l = 1;
  for (const Rational* r : {&a2, &a1, &a0}) {
    BigInt d = r->get_den();
    BigInt g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  auto scaled = [&](const Rational& r) {
    Rational s = r * make_rational(l);
    return BigInt(s.get_num());  // den is 1 after scaling
  };
  BigInt A = scaled(a2), B = scaled(a1), C = scaled(a0);

  std::vector<Rational> roots;
  if (sgn(A) == 0) {
    if (sgn(B) != 0) roots.push_back(make_rational(-C, B));
    // A = B = 0, C != 0: contradiction, no roots
    return roots;
  }
  BigInt disc = B * B - 4 * A * C;
  if (sgn(disc) < 0) return roots;
  IsqrtResult s = isqrt(disc);
  if (!s.exact) return roots;  // irrational pair
  roots.push_back(make_rational(-B + s.root, 2 * A));
  if (sgn(s.root) != 0) roots.push_back(make_rational(-B - s.root, 2 * A));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace dioph
