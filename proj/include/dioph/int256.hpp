#pragma once

#include <cstdint>

#include <gmp.h>

#include "dioph/bigint.hpp"

namespace dioph {

namespace detail {

// fixed-width names shared by the candidate-system engines
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// roots with |r| or |coordinate| beyond these windows are re-solved exactly
inline constexpr i64 kRootSafe = i64(1) << 40;
inline constexpr i64 kCoordSafe = i64(1) << 60;

}  // namespace detail

// Minimal unsigned 256-bit magnitude, just enough to hold the discriminant
// a1^2 - 4 a2 a0 of the radius quadratics (|a1| < 2^127 guaranteed by the
// fast-path guards). Only the operations the solver needs exist.
struct U256 {
  unsigned __int128 lo = 0, hi = 0;
};

inline U256 mul_u128(unsigned __int128 a, unsigned __int128 b) {
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;
  u64 a0 = u64(a), a1 = u64(a >> 64), b0 = u64(b), b1 = u64(b >> 64);
  u128 p00 = u128(a0) * b0, p01 = u128(a0) * b1, p10 = u128(a1) * b0, p11 = u128(a1) * b1;
  u128 mid = p01 + p10;
  u128 carry_mid = (mid < p01) ? (u128(1) << 64) : 0;
  u128 lo = p00 + (mid << 64);
  u128 carry_lo = (lo < p00) ? 1 : 0;
  return {lo, p11 + (mid >> 64) + carry_mid + carry_lo};
}

inline int cmp_u256(U256 a, U256 b) {
  if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
  if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
  return 0;
}

inline U256 add_u256(U256 a, U256 b) {
  U256 r;
  r.lo = a.lo + b.lo;
  r.hi = a.hi + b.hi + (r.lo < a.lo ? 1 : 0);
  return r;
}

// requires a >= b
inline U256 sub_u256(U256 a, U256 b) {
  U256 r;
  r.lo = a.lo - b.lo;
  r.hi = a.hi - b.hi - (a.lo < b.lo ? 1 : 0);
  return r;
}

// a mod m for small m, given 2^128 mod m
inline std::uint64_t mod_small_u256(U256 a, std::uint64_t m, std::uint64_t two128_mod_m) {
  std::uint64_t lo = std::uint64_t(a.lo % m);
  std::uint64_t hi = std::uint64_t(a.hi % m);
  return std::uint64_t(((unsigned __int128)hi * two128_mod_m + lo) % m);
}

inline constexpr std::uint64_t two128_mod63 = 4;   // 2^6 = 1 (mod 63)
inline constexpr std::uint64_t two128_mod65 = 61;  // 2^6 = -1 (mod 65)

// residue screens before the exact square root
inline bool maybe_square_u256(U256 n) {
  if (!((detail::square_mask64 >> (std::uint64_t(n.lo) & 63)) & 1)) return false;
  if (!detail::square_residues63[mod_small_u256(n, 63, two128_mod63)]) return false;
  if (!detail::square_residues65[mod_small_u256(n, 65, two128_mod65)]) return false;
  return true;
}

namespace detail {
struct MpzScratch {
  mpz_t z, root, rem;
  MpzScratch() { mpz_inits(z, root, rem, nullptr); }
  ~MpzScratch() { mpz_clears(z, root, rem, nullptr); }
  MpzScratch(const MpzScratch&) = delete;
  MpzScratch& operator=(const MpzScratch&) = delete;
};
}  // namespace detail

// exact square root; false if n is not a perfect square
inline bool sqrt_exact_u256(U256 n, unsigned __int128* root) {
  static thread_local detail::MpzScratch s;
  std::uint64_t limbs[4] = {std::uint64_t(n.lo), std::uint64_t(n.lo >> 64), std::uint64_t(n.hi),
                            std::uint64_t(n.hi >> 64)};
  mpz_import(s.z, 4, -1, 8, 0, 0, limbs);
  mpz_sqrtrem(s.root, s.rem, s.z);
  if (mpz_sgn(s.rem) != 0) return false;
  std::uint64_t out[4] = {0, 0, 0, 0};
  size_t cnt = 0;
  mpz_export(out, &cnt, -1, 8, 0, 0, s.root);
  *root = ((unsigned __int128)out[1] << 64) | out[0];
  return true;
}

inline U256 to_u256(const BigInt& n) {
  std::uint64_t out[4] = {0, 0, 0, 0};
  size_t cnt = 0;
  mpz_export(out, &cnt, -1, 8, 0, 0, n.get_mpz_t());
  return {((unsigned __int128)out[1] << 64) | out[0], ((unsigned __int128)out[3] << 64) | out[2]};
}

inline BigInt to_bigint(U256 n) {
  std::uint64_t limbs[4] = {std::uint64_t(n.lo), std::uint64_t(n.lo >> 64), std::uint64_t(n.hi),
                            std::uint64_t(n.hi >> 64)};
  BigInt r;
  mpz_import(r.get_mpz_t(), 4, -1, 8, 0, 0, limbs);
  return r;
}

}  // namespace dioph
