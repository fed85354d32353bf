#pragma once

// Counting Pythagorean triangles with hypotenuse l, two independent ways.
//
// chi(l) counts unordered pairs x >= y >= 1 with x^2 + y^2 = l^2.  Jacobi's
// two-squares theorem gives r2(n) = 4*(d14(n) - d34(n)) ordered signed
// representations of n, where dr4 counts divisors congruent to r mod 4.
// Applied to n = l^2, the four axis representations (+-l,0), (0,+-l) and the
// 8-fold symmetry of the rest (x = y is impossible, as l^2 = 2x^2 has no
// integer solution) yield the closed form
//   chi(l) = (d14(l^2) - d34(l^2) - 1) / 2.
// The source note instead prints chi(l) = d14(l) - d34(l), which already
// fails at l = 5 (it gives 2, the true count is 1).  Both are computed; the
// literal form is reported side by side and never substituted for the count.

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"

namespace dioph {

struct ChiResult {
  std::uint64_t l;
  std::uint64_t chi_brute;
  std::uint64_t chi_divisor;
  std::int64_t chi_paper_literal;
  bool agree;  // chi_brute == chi_divisor; the corrected formula is exact
};

inline constexpr std::uint64_t kMaxHypotenuse = 1000000000;  // l^2 stays below 2^63

inline std::uint64_t checked_hypotenuse_square(std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("hypotenuse must be positive");
  if (l > kMaxHypotenuse) throw std::range_error("hypotenuse exceeds the supported range");
  return l * l;
}

// Unordered pairs x >= y >= 1 with x^2 + y^2 = l^2, by direct enumeration.
inline std::uint64_t chi_bruteforce(std::uint64_t l) {
  const std::uint64_t ll = checked_hypotenuse_square(l);
  std::uint64_t count = 0;
  for (std::uint64_t y = 1; 2 * y * y < ll; ++y) {
    std::uint64_t x = 0;
    if (is_square_u64(ll - y * y, &x) && x > y) ++count;
  }
  return count;
}

// (#divisors of n congruent 1 mod 4, #divisors congruent 3 mod 4), by trial
// division in divisor pairs up to sqrt(n).
inline std::pair<std::uint64_t, std::uint64_t> divisor_count_mod4(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor counting needs a positive integer");
  std::uint64_t d1 = 0, d3 = 0;
  auto tally = [&](std::uint64_t d) {
    if (d % 4 == 1) ++d1;
    if (d % 4 == 3) ++d3;
  };
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    tally(d);
    if (d != n / d) tally(n / d);
  }
  return {d1, d3};
}

// chi(l) = (d14(l^2) - d34(l^2) - 1) / 2; exact for every l >= 1.
inline std::uint64_t chi_divisor(std::uint64_t l) {
  auto [d1, d3] = divisor_count_mod4(checked_hypotenuse_square(l));
  // r2(l^2)/4 = d14 - d34 = 1 + 2*chi: an odd count >= 1, or the divisor
  // character bookkeeping is broken
  if (d1 < d3 + 1 || (d1 - d3 - 1) % 2 != 0)
    throw InternalError("two-squares divisor counts lost the axis representation");
  return (d1 - d3 - 1) / 2;
}

// The formula exactly as printed in the source note: d14(l) - d34(l).
inline std::int64_t chi_paper_literal(std::uint64_t l) {
  if (l == 0) throw std::invalid_argument("hypotenuse must be positive");
  auto [d1, d3] = divisor_count_mod4(l);
  return std::int64_t(d1) - std::int64_t(d3);
}

inline ChiResult compute_chi(std::uint64_t l) {
  ChiResult r{l, chi_bruteforce(l), chi_divisor(l), chi_paper_literal(l), false};
  r.agree = r.chi_brute == r.chi_divisor;
  return r;
}

}  // namespace dioph
