#pragma once

// Fast witness search for triangle extension points.
//
// A witness is a lattice point, distinct from the three vertices, at integral
// distance to all of them; exhibiting one disproves unextendability without
// running the full (d1, d2) loop.  Candidates come from two families:
//   - parallelogram reflections A+B-C, A+C-B, B+C-A (two distances free);
//   - points X = P + k*W on the line through side (P, Q), primitive direction
//     W with |W| = Lp: X is at integral distance to the off-line vertex R iff
//     cr^2 = (t*Lp - e')(t*Lp + e') factors over the divisors of cr^2, where
//     cr = W x (R - P); each divisor pair (e, f) with 2*Lp | e+f yields
//     k = (+-(f-e)/2 + W.(R-P)) / |W|^2 when that quotient is integral.
// The search is sound but deliberately incomplete: huge conjugate divisors are
// skipped and residual factors above 2^16 are not split further.  Every hit is
// re-verified directly before being returned; a nullopt is never a proof.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/point.hpp"

namespace dioph {

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> ps = [] {
    std::vector<bool> comp(65536, false);
    std::vector<std::uint32_t> v;
    for (std::uint32_t i = 2; i < 65536; ++i)
      if (!comp[i]) {
        v.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < 65536; j += i) comp[j] = true;
      }
    return v;
  }();
  return ps;
}

// Divisors e of n^2 with e <= n. Complete when every prime factor of n below
// 2^16 is split and at most one larger factor remains; a residual with two
// large factors is kept whole, shrinking the list (witness search stays sound).
inline void divisors_of_square_upto(std::uint64_t n, std::vector<std::uint64_t>& out) {
  out.clear();
  out.push_back(1);
  std::uint64_t m = n;
  std::vector<std::pair<std::uint64_t, int>> fac;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t(p) * p > m) break;
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      fac.emplace_back(p, e);
    }
  }
  if (m > 1) fac.emplace_back(m, 1);
  for (auto [p, e] : fac) {
    const std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= 2 * e; ++k) {
      if (__builtin_mul_overflow(pk, p, &pk)) break;
      for (std::size_t i = 0; i < sz; ++i) {
        const unsigned __int128 d = static_cast<unsigned __int128>(out[i]) * pk;
        if (d <= n) out.push_back(std::uint64_t(d));
      }
    }
  }
}

struct Pt64 {
  std::int64_t x, y;
  friend bool operator==(const Pt64&, const Pt64&) = default;
};

// exact verification at any magnitude: fixed-width when safe, else full precision
inline bool witness_ok(__int128 x, __int128 y, const Pt64& A, const Pt64& B, const Pt64& C) {
  const auto small = [](__int128 v) { return v >= -(1ll << 30) && v <= (1ll << 30); };
  if ((x == A.x && y == A.y) || (x == B.x && y == B.y) || (x == C.x && y == C.y)) return false;
  if (small(x) && small(y)) {
    for (const Pt64& q : {A, B, C}) {
      const std::int64_t dx = std::int64_t(x) - q.x, dy = std::int64_t(y) - q.y;
      std::uint64_t root = 0;
      if (!is_square_u64(std::uint64_t(dx * dx + dy * dy), &root)) return false;
    }
    return true;
  }
  const BigInt bx = BigInt(std::int64_t(x >> 64)) * (BigInt(1) << 64) +
                    BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
  const BigInt by = BigInt(std::int64_t(y >> 64)) * (BigInt(1) << 64) +
                    BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(y)));
  for (const Pt64& q : {A, B, C}) {
    const BigInt dx = BigInt(bx - q.x), dy = BigInt(by - q.y);
    if (!is_perfect_square(BigInt(dx * dx + dy * dy))) return false;
  }
  return true;
}

// complete-modulo-caps scan of the line through (P, Q) for a verified witness
inline std::optional<std::pair<__int128, __int128>> line_witness(
    const Pt64& P, const Pt64& Q, const Pt64& R, const Pt64& A, const Pt64& B, const Pt64& C,
    std::vector<std::uint64_t>& scratch) {
  const std::int64_t vx = Q.x - P.x, vy = Q.y - P.y;
  const std::int64_t g = std::gcd(vx < 0 ? -vx : vx, vy < 0 ? -vy : vy);
  const std::int64_t wx = vx / g, wy = vy / g;
  const std::int64_t m = wx * wx + wy * wy;  // |W|^2
  std::uint64_t lp = 0;
  if (!is_square_u64(std::uint64_t(m), &lp)) return std::nullopt;  // side length irrational
  const std::int64_t rx = R.x - P.x, ry = R.y - P.y;
  const std::int64_t c0 = wx * rx + wy * ry;
  const std::int64_t cr = wx * ry - wy * rx;
  if (cr == 0) return std::nullopt;  // R on the line: caller violated non-collinearity
  const std::uint64_t acr = std::uint64_t(cr < 0 ? -cr : cr);
  divisors_of_square_upto(acr, scratch);
  const unsigned __int128 N = static_cast<unsigned __int128>(acr) * acr;
  for (const std::uint64_t e : scratch) {
    const unsigned __int128 f128 = N / e;
    if (f128 > (static_cast<unsigned __int128>(1) << 62)) continue;  // best-effort cap
    const std::uint64_t f = std::uint64_t(f128);
    if ((e + f) % (2 * lp) != 0) continue;  // t = (e+f)/(2 Lp) must be integral
    for (const int sgn : {1, -1}) {
      const __int128 half = __int128(f - e) / 2;  // e + f even makes f - e even
      const __int128 num = sgn * half + c0;
      if (num % m != 0) continue;
      const __int128 k = num / m;
      const __int128 x = P.x + k * wx, y = P.y + k * wy;
      if (witness_ok(x, y, A, B, C)) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Verified extension witness of the triangle {A, B, C}, or nullopt when the
// incomplete search finds none (never a proof of unextendability).  Triangles
// with coordinates beyond 2^20 are passed over (nullopt) and must use the
// exhaustive loop.
inline std::optional<LatticePoint2> find_extension_witness(const LatticePoint2& A,
                                                           const LatticePoint2& B,
                                                           const LatticePoint2& C) {
  const auto fit = [](const BigInt& v) { return v >= -(1l << 20) && v <= (1l << 20); };
  for (const LatticePoint2* p : {&A, &B, &C})
    if (!fit(p->x) || !fit(p->y)) return std::nullopt;
  const detail::Pt64 a{A.x.get_si(), A.y.get_si()}, b{B.x.get_si(), B.y.get_si()},
      c{C.x.get_si(), C.y.get_si()};
  if (std::int64_t(a.x - c.x) * (b.y - c.y) == std::int64_t(a.y - c.y) * (b.x - c.x))
    return std::nullopt;  // collinear input: no finite loop to accelerate

  const auto as_point = [](__int128 x, __int128 y) {
    const auto big = [](__int128 v) {
      return BigInt(BigInt(std::int64_t(v >> 64)) * (BigInt(1) << 64) +
                    BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(v))));
    };
    return LatticePoint2{big(x), big(y)};
  };

  for (const detail::Pt64 p : {detail::Pt64{a.x + b.x - c.x, a.y + b.y - c.y},
                               detail::Pt64{a.x + c.x - b.x, a.y + c.y - b.y},
                               detail::Pt64{b.x + c.x - a.x, b.y + c.y - a.y}}) {
    if (detail::witness_ok(p.x, p.y, a, b, c)) return as_point(p.x, p.y);
  }
  std::vector<std::uint64_t> scratch;
  if (auto w = detail::line_witness(a, b, c, a, b, c, scratch)) return as_point(w->first, w->second);
  if (auto w = detail::line_witness(a, c, b, a, b, c, scratch)) return as_point(w->first, w->second);
  if (auto w = detail::line_witness(b, c, a, a, b, c, scratch)) return as_point(w->first, w->second);
  return std::nullopt;
}

}  // namespace dioph
