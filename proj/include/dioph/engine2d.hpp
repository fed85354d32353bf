#pragma once

// Candidate-system solver for the planar extension loop. Two interchangeable
// paths compute identical results:
//  - a guarded fixed-width path (int64/int128 plus a 256-bit discriminant)
//    used when precomputed worst-case bounds prove no overflow is possible;
//  - an arbitrary-precision path used otherwise, and as a per-system
//    fallback when a root exceeds the fixed-width safety window.
//
// Derivation (r = dist(P,C), subtracting squared distance equations):
//   m11 x + m12 y = 2 d1 r + beta1,   m = 2(C-A); 2(C-B) rows
//   m21 x + m22 y = 2 d2 r + beta2,   beta_i = d_i^2 + |C|^2 - |X_i|^2
// Cramer gives x = (u1 r + v1)/det, y = (u2 r + v2)/det, and substituting
// into |P-C|^2 = r^2 yields the radius quadratic
//   (u1^2+u2^2-det^2) r^2 + 2(u1 w1 + u2 w2) r + (w1^2 + w2^2) = 0,
// w_i = v_i - C_i det. Roots r >= 0 are kept, coordinates must divide out
// exactly, and every candidate is re-verified against the unsquared
// distance equations (squaring admits spurious roots).

#include <cstdint>
#include <functional>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"
#include "dioph/int256.hpp"
#include "dioph/point.hpp"

namespace dioph::detail {

struct Candidate2 {
  LatticePoint2 p;
  BigInt r;
};

// Exact elimination context over the base triple (A, B, C).
struct EngineBase2 {
  // big-integer context, always valid
  BigInt a1, a2, b1, b2, c1, c2;
  BigInt m11, m12, m21, m22, det, k1, k2;

  // fixed-width mirror, valid when fast == true
  bool fast = false;
  i64 f_a1, f_a2, f_b1, f_b2, f_c1, f_c2;
  i64 f_m11, f_m12, f_m21, f_m22, f_det, f_k1, f_k2;

  // reusable mpz temporaries for the big-integer system path
  BigInt t_b1, t_b2, t_u1, t_u2, t_v1, t_v2, t_w1, t_w2;
  BigInt t_A2, t_A1, t_A0, t_disc, t_root, t_r, t_xn, t_yn, t_x, t_y, t_dx, t_dy, t_s;

  void init(const LatticePoint2& A, const LatticePoint2& B, const LatticePoint2& C,
            const BigInt& d1max, const BigInt& d2max) {
    a1 = A.x; a2 = A.y; b1 = B.x; b2 = B.y; c1 = C.x; c2 = C.y;
    m11 = 2 * (c1 - a1); m12 = 2 * (c2 - a2);
    m21 = 2 * (c1 - b1); m22 = 2 * (c2 - b2);
    det = m11 * m22 - m12 * m21;
    if (sgn(det) == 0) throw std::invalid_argument("candidate system base is collinear");
    BigInt cc = c1 * c1 + c2 * c2;
    k1 = cc - (a1 * a1 + a2 * a2);
    k2 = cc - (b1 * b1 + b2 * b2);
    fast = decide_fast(d1max, d2max);
    if (fast) {
      f_a1 = i64(a1.get_si()); f_a2 = i64(a2.get_si());
      f_b1 = i64(b1.get_si()); f_b2 = i64(b2.get_si());
      f_c1 = i64(c1.get_si()); f_c2 = i64(c2.get_si());
      f_m11 = i64(m11.get_si()); f_m12 = i64(m12.get_si());
      f_m21 = i64(m21.get_si()); f_m22 = i64(m22.get_si());
      f_det = i64(det.get_si()); f_k1 = i64(k1.get_si()); f_k2 = i64(k2.get_si());
    }
  }

 private:
  // Worst-case magnitude bounds over the whole (d1, d2) loop, computed
  // exactly. When every bound clears its threshold, no int64/int128
  // expression in the fast path can overflow.
  bool decide_fast(const BigInt& d1max, const BigInt& d2max) const {
    const BigInt lim61 = BigInt(1) << 61;
    const BigInt lim31 = BigInt(1) << 31;
    auto amax = [](const BigInt& x, const BigInt& y) { return abs(x) >= abs(y) ? abs(x) : abs(y); };
    for (const BigInt* v : {&a1, &a2, &b1, &b2, &c1, &c2, &m11, &m12, &m21, &m22, &det, &k1, &k2})
      if (abs(*v) >= lim61) return false;
    if (d1max >= lim31 || d2max >= lim31) return false;
    BigInt beta1 = d1max * d1max + amax(k1, BigInt(0));
    BigInt beta2 = d2max * d2max + amax(k2, BigInt(0));
    if (beta1 >= lim61 || beta2 >= lim61) return false;
    BigInt mu_a = amax(m22, m21);  // multiplies d1/beta1 terms
    BigInt mu_b = amax(m12, m11);  // multiplies d2/beta2 terms
    BigInt bu = 2 * d1max * mu_a + 2 * d2max * mu_b;
    BigInt bv = beta1 * mu_a + beta2 * mu_b;
    BigInt bw = bv + amax(c1, c2) * abs(det);
    return bu < lim61 && bw < lim61;
  }
};

// Arbitrary-precision solve of one (d1, d2) system. Appends verified
// candidates (vs the base triple only).
inline void solve_system_big(EngineBase2& e, const BigInt& d1, const BigInt& d2,
                             std::vector<Candidate2>& out) {
  e.t_b1 = d1 * d1 + e.k1;
  e.t_b2 = d2 * d2 + e.k2;
  e.t_u1 = 2 * (d1 * e.m22 - d2 * e.m12);
  e.t_u2 = 2 * (d2 * e.m11 - d1 * e.m21);
  e.t_v1 = e.t_b1 * e.m22 - e.t_b2 * e.m12;
  e.t_v2 = e.t_b2 * e.m11 - e.t_b1 * e.m21;
  e.t_w1 = e.t_v1 - e.c1 * e.det;
  e.t_w2 = e.t_v2 - e.c2 * e.det;
  e.t_A2 = e.t_u1 * e.t_u1 + e.t_u2 * e.t_u2 - e.det * e.det;
  e.t_A1 = 2 * (e.t_u1 * e.t_w1 + e.t_u2 * e.t_w2);
  e.t_A0 = e.t_w1 * e.t_w1 + e.t_w2 * e.t_w2;

  auto try_root = [&](const BigInt& r) {
    if (sgn(r) < 0) return;
    if (sgn(r + d1) < 0 || sgn(r + d2) < 0) return;
    e.t_xn = e.t_u1 * r + e.t_v1;
    if (!mpz_divisible_p(e.t_xn.get_mpz_t(), e.det.get_mpz_t())) return;
    e.t_yn = e.t_u2 * r + e.t_v2;
    if (!mpz_divisible_p(e.t_yn.get_mpz_t(), e.det.get_mpz_t())) return;
    mpz_divexact(e.t_x.get_mpz_t(), e.t_xn.get_mpz_t(), e.det.get_mpz_t());
    mpz_divexact(e.t_y.get_mpz_t(), e.t_yn.get_mpz_t(), e.det.get_mpz_t());
    // unsquared verification vs all three base points
    e.t_dx = e.t_x - e.a1; e.t_dy = e.t_y - e.a2; e.t_s = r + d1;
    if (e.t_dx * e.t_dx + e.t_dy * e.t_dy != e.t_s * e.t_s) return;
    e.t_dx = e.t_x - e.b1; e.t_dy = e.t_y - e.b2; e.t_s = r + d2;
    if (e.t_dx * e.t_dx + e.t_dy * e.t_dy != e.t_s * e.t_s) return;
    e.t_dx = e.t_x - e.c1; e.t_dy = e.t_y - e.c2;
    if (e.t_dx * e.t_dx + e.t_dy * e.t_dy != r * r) return;
    out.push_back(Candidate2{LatticePoint2{e.t_x, e.t_y}, r});
  };

  if (sgn(e.t_A2) == 0) {
    if (sgn(e.t_A1) == 0) {
      if (sgn(e.t_A0) == 0)
        throw InternalError("radius quadratic identically zero for non-collinear base");
      return;
    }
    if (mpz_divisible_p(e.t_A0.get_mpz_t(), e.t_A1.get_mpz_t())) {
      mpz_divexact(e.t_r.get_mpz_t(), e.t_A0.get_mpz_t(), e.t_A1.get_mpz_t());
      e.t_r = -e.t_r;
      try_root(e.t_r);
    }
    return;
  }
  e.t_disc = e.t_A1 * e.t_A1 - 4 * e.t_A2 * e.t_A0;
  if (sgn(e.t_disc) < 0) return;
  if (mpz_perfect_square_p(e.t_disc.get_mpz_t()) == 0) return;
  mpz_sqrt(e.t_root.get_mpz_t(), e.t_disc.get_mpz_t());
  BigInt den = 2 * e.t_A2;
  e.t_r = -e.t_A1 + e.t_root;
  if (mpz_divisible_p(e.t_r.get_mpz_t(), den.get_mpz_t())) {
    BigInt r = e.t_r / den;
    try_root(r);
  }
  if (sgn(e.t_root) != 0) {
    e.t_r = -e.t_A1 - e.t_root;
    if (mpz_divisible_p(e.t_r.get_mpz_t(), den.get_mpz_t())) {
      BigInt r = e.t_r / den;
      try_root(r);
    }
  }
}

// Fixed-width solve of one (d1, d2) system. Returns false when a root or
// coordinate leaves the proven-safe window and the caller must re-solve
// this single system with solve_system_big. Appends verified candidates.
inline bool solve_system_fast(const EngineBase2& e, i64 d1, i64 d2,
                              std::vector<Candidate2>& out) {
  const std::size_t mark = out.size();
  i64 beta1 = d1 * d1 + e.f_k1;
  i64 beta2 = d2 * d2 + e.f_k2;
  i64 u1 = 2 * (d1 * e.f_m22 - d2 * e.f_m12);
  i64 u2 = 2 * (d2 * e.f_m11 - d1 * e.f_m21);
  i64 v1 = beta1 * e.f_m22 - beta2 * e.f_m12;
  i64 v2 = beta2 * e.f_m11 - beta1 * e.f_m21;
  i64 w1 = v1 - e.f_c1 * e.f_det;
  i64 w2 = v2 - e.f_c2 * e.f_det;
  i128 A2 = i128(u1) * u1 + i128(u2) * u2 - i128(e.f_det) * e.f_det;
  i128 A1 = 2 * (i128(u1) * w1 + i128(u2) * w2);
  i128 A0 = i128(w1) * w1 + i128(w2) * w2;

  bool overflow = false;
  auto try_root = [&](i128 r) {
    if (overflow) return;
    if (r < 0) return;
    if (r + d1 < 0 || r + d2 < 0) return;
    if (r > kRootSafe) { overflow = true; return; }
    i128 xn = i128(u1) * r + v1;
    if (xn % e.f_det) return;
    i128 yn = i128(u2) * r + v2;
    if (yn % e.f_det) return;
    i128 x = xn / e.f_det, y = yn / e.f_det;
    if (x > kCoordSafe || x < -kCoordSafe || y > kCoordSafe || y < -kCoordSafe) {
      overflow = true;
      return;
    }
    i128 dx = x - e.f_a1, dy = y - e.f_a2, s = r + d1;
    if (dx * dx + dy * dy != s * s) return;
    dx = x - e.f_b1; dy = y - e.f_b2; s = r + d2;
    if (dx * dx + dy * dy != s * s) return;
    dx = x - e.f_c1; dy = y - e.f_c2;
    if (dx * dx + dy * dy != r * r) return;
    out.push_back(Candidate2{LatticePoint2{i64(x), i64(y)}, BigInt(long(r))});
  };

  if (A2 == 0) {
    if (A1 == 0) {
      if (A0 == 0)
        throw InternalError("radius quadratic identically zero for non-collinear base");
      return true;
    }
    if (A0 % A1 == 0) try_root(-(A0 / A1));
  } else {
    u128 a1m = A1 < 0 ? u128(-A1) : u128(A1);
    U256 s1 = mul_u128(a1m, a1m);
    u128 a2m = A2 < 0 ? u128(-A2) : u128(A2);
    u128 a0m = A0 < 0 ? u128(-A0) : u128(A0);
    U256 s2 = mul_u128(4 * a2m, a0m);
    U256 disc;
    if (A0 == 0 || (A2 < 0) == (A0 < 0)) {
      // 4 A2 A0 >= 0: disc = A1^2 - |4 A2 A0|
      int c = cmp_u256(s1, s2);
      if (c < 0) return true;  // negative discriminant
      disc = sub_u256(s1, s2);
    } else {
      disc = add_u256(s1, s2);
    }
    if (!maybe_square_u256(disc)) return true;
    u128 root;
    if (!sqrt_exact_u256(disc, &root)) return true;
    i128 den = 2 * A2;
    i128 n1 = -A1 + i128(root);
    if (n1 % den == 0) try_root(n1 / den);
    if (root != 0) {
      i128 n2 = -A1 - i128(root);
      if (n2 % den == 0) try_root(n2 / den);
    }
  }
  if (overflow) {
    out.resize(mark);
    return false;
  }
  return true;
}

// One system through the best available path; exact in all cases.
inline void solve_system(EngineBase2& e, long d1, long d2, std::vector<Candidate2>& out) {
  if (e.fast) {
    if (solve_system_fast(e, d1, d2, out)) return;
  }
  solve_system_big(e, BigInt(d1), BigInt(d2), out);
}

}  // namespace dioph::detail
