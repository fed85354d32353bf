#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

namespace dioph {

using BigInt = mpz_class;

struct IsqrtResult {
  BigInt root;
  bool exact;
};

namespace detail {

// floor(sqrt(n)) by Newton iteration on 64-bit integers. The start value
// 2^ceil(bits/2) is >= sqrt(n), and the iteration decreases monotonically
// until it brackets the root.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  int bw = 64 - std::countl_zero(n);
  std::uint64_t x = std::uint64_t(1) << ((bw + 1) / 2);
  while (true) {
    std::uint64_t y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  return x;
}

// Quadratic-residue screens: n can only be a perfect square if it is a
// square residue mod 64, 63 and 65. Together these reject ~97.7% of
// non-squares with three table lookups.
inline constexpr std::uint64_t square_mask64 = [] {
  std::uint64_t m = 0;
  for (int i = 0; i < 64; ++i) m |= std::uint64_t(1) << ((i * i) & 63);
  return m;
}();

template <int M>
constexpr std::array<bool, M> square_residues() {
  std::array<bool, M> t{};
  for (int i = 0; i < M; ++i) t[std::size_t((i * i) % M)] = true;
  return t;
}
inline constexpr auto square_residues63 = square_residues<63>();
inline constexpr auto square_residues65 = square_residues<65>();

inline bool maybe_square_u64(std::uint64_t n) {
  if (!((square_mask64 >> (n & 63)) & 1)) return false;
  if (!square_residues63[n % 63]) return false;
  if (!square_residues65[n % 65]) return false;
  return true;
}

}  // namespace detail

// floor(sqrt(n)) plus exactness flag. Negative input is a domain error.
inline IsqrtResult isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt: negative input");
  if (n.fits_ulong_p() && mpz_get_ui(n.get_mpz_t()) <= UINT32_MAX) {
    // small fast path keeps the hot callers off mpz temporaries
    std::uint64_t v = mpz_get_ui(n.get_mpz_t());
    std::uint64_t r = detail::isqrt_u64(v);
    return {BigInt(static_cast<unsigned long>(r)), r * r == v};
  }
  IsqrtResult res{BigInt(), false};
  BigInt rem;
  mpz_sqrtrem(res.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  res.exact = sgn(rem) == 0;
  return res;
}

inline bool is_perfect_square(const BigInt& n) {
  if (sgn(n) < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// exact 64-bit variant: root = floor(sqrt(n)), returns whether root^2 == n
inline bool is_square_u64(std::uint64_t n, std::uint64_t* root = nullptr) {
  if (!detail::maybe_square_u64(n)) return false;
  std::uint64_t r = detail::isqrt_u64(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

}  // namespace dioph
