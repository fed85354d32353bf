#pragma once

// Heronian side triples and their lattice embeddings.
//
// A normalized triple (a,b,c) with a >= b >= c >= 1 and a < b+c embeds in Z^2
// only if its Heron product hp = (a+b+c)(-a+b+c)(a-b+c)(a+b-c) = 16*Area^2 is
// an even perfect square r^2: the doubled lattice area |det| is an integer and
// hp = 4*det^2.  Fixing A = (0,0) and a vertex B with |B|^2 = sAB^2, the third
// vertex satisfies B.C = t and B x C = +-r/2, hence
//   C = ((t*Bx -+ u*By) / sAB^2, (t*By +- u*Bx) / sAB^2),
//   t = (sAB^2 + sAC^2 - sBC^2) / 2,  u = r/2.
// Embeddings are returned in canonical form: A pinned at the origin and (B,C)
// the lexicographic minimum of (B.x, B.y, C.x, C.y) over the 8 lattice
// symmetries composed with the 6 vertex labelings.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"
#include "dioph/figure.hpp"
#include "dioph/planar_extension.hpp"
#include "dioph/point.hpp"

namespace dioph {

// Normalized side-length triple: a >= b >= c >= 1, strict triangle inequality.
struct SideTriple {
  BigInt a, b, c;

  SideTriple(BigInt a_in, BigInt b_in, BigInt c_in)
      : a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)) {
    if (c < 1 || b < c || a < b)
      throw std::invalid_argument("side triple must satisfy a >= b >= c >= 1");
    if (a >= b + c)
      throw std::invalid_argument("side triple violates the strict triangle inequality");
  }

  friend bool operator==(const SideTriple&, const SideTriple&) = default;
};

// (a+b+c)(-a+b+c)(a-b+c)(a+b-c) = 16*Area^2; positive for any valid triple.
inline BigInt heron_product(const SideTriple& t) {
  return BigInt((t.a + t.b + t.c) * (-t.a + t.b + t.c) * (t.a - t.b + t.c) *
                (t.a + t.b - t.c));
}

// Rational area <=> the Heron product is a perfect square.
inline bool is_heronian(const SideTriple& t) { return is_perfect_square(heron_product(t)); }

inline bool is_pythagorean(const SideTriple& t) {
  return t.a * t.a == t.b * t.b + t.c * t.c;
}

namespace detail {

// O(sqrt(n)) descent in full precision; reference path for any magnitude.
inline std::vector<std::pair<BigInt, BigInt>> two_squares_reps_wide(const BigInt& n) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (BigInt x = isqrt(n).root;; --x) {
    const BigInt y2 = BigInt(n - x * x);
    if (y2 > x * x) break;
    if (const IsqrtResult y = isqrt(y2); y.exact) out.emplace_back(x, y.root);
    if (x == 0) break;
  }
  return out;
}

}  // namespace detail

// All (x, y) with x >= y >= 0 and x^2 + y^2 = n, sorted by descending x.
inline std::vector<std::pair<BigInt, BigInt>> sum_two_squares_reps(const BigInt& n) {
  if (n < 0) throw std::domain_error("sum_two_squares_reps of negative value");
  if (!n.fits_ulong_p()) return detail::two_squares_reps_wide(n);
  std::vector<std::pair<BigInt, BigInt>> out;
  const std::uint64_t m = n.get_ui();
  for (std::uint64_t x = detail::isqrt_u64(m);; --x) {
    const std::uint64_t y2 = m - x * x;
    if (y2 > x * x) break;
    std::uint64_t y = 0;
    if (is_square_u64(y2, &y))
      out.emplace_back(BigInt(static_cast<unsigned long>(x)),
                       BigInt(static_cast<unsigned long>(y)));
    if (x == 0) break;
  }
  return out;
}

// Lattice realization of a side triple; canonical: A = (0,0), (B,C) lex-minimal
// over the 8 lattice symmetries and the 6 vertex labelings.
struct Embedding {
  LatticePoint2 A, B, C;

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend bool operator<(const Embedding& l, const Embedding& r) {
    if (l.A < r.A) return true;
    if (r.A < l.A) return false;
    if (l.B < r.B) return true;
    if (r.B < l.B) return false;
    return l.C < r.C;
  }
};

namespace detail {

// (x, y) -> (+-x, +-y), (+-y, +-x): the dihedral symmetries of the lattice.
inline constexpr std::array<std::array<int, 4>, 8> kLatticeSymmetries = {{
    {1, 0, 0, 1},
    {-1, 0, 0, 1},
    {1, 0, 0, -1},
    {-1, 0, 0, -1},
    {0, 1, 1, 0},
    {0, -1, 1, 0},
    {0, 1, -1, 0},
    {0, -1, -1, 0},
}};

}  // namespace detail

// Lex-minimal representative of the congruence class of {(0,0), B, C} under
// lattice symmetries and relabelings.
inline Embedding canonical_embedding(const LatticePoint2& B, const LatticePoint2& C) {
  const std::array<LatticePoint2, 3> pts = {LatticePoint2{BigInt(0), BigInt(0)}, B, C};
  std::optional<std::array<BigInt, 4>> best;
  for (int o = 0; o < 3; ++o) {
    for (int i = 0; i < 3; ++i) {
      if (i == o) continue;
      const int j = 3 - o - i;
      // each symmetry is a sign/swap selection of the translated coordinates
      const BigInt bx = BigInt(pts[i].x - pts[o].x), by = BigInt(pts[i].y - pts[o].y);
      const BigInt cx = BigInt(pts[j].x - pts[o].x), cy = BigInt(pts[j].y - pts[o].y);
      const BigInt nbx = BigInt(-bx), nby = BigInt(-by);
      const BigInt ncx = BigInt(-cx), ncy = BigInt(-cy);
      const std::array<std::array<const BigInt*, 4>, 8> sym = {{
          {&bx, &by, &cx, &cy},
          {&nbx, &by, &ncx, &cy},
          {&bx, &nby, &cx, &ncy},
          {&nbx, &nby, &ncx, &ncy},
          {&by, &bx, &cy, &cx},
          {&nby, &bx, &ncy, &cx},
          {&by, &nbx, &cy, &ncx},
          {&nby, &nbx, &ncy, &ncx},
      }};
      for (const auto& s : sym) {
        bool better = !best;
        if (!better) {
          for (int t = 0; t < 4; ++t) {
            const int c = cmp(*s[t], (*best)[t]);
            if (c != 0) {
              better = c < 0;
              break;
            }
          }
        }
        if (better) best = std::array<BigInt, 4>{*s[0], *s[1], *s[2], *s[3]};
      }
    }
  }
  return Embedding{LatticePoint2{BigInt(0), BigInt(0)},
                   LatticePoint2{(*best)[0], (*best)[1]},
                   LatticePoint2{(*best)[2], (*best)[3]}};
}

// Complete list of canonical embeddings of t; empty when none exist (odd Heron
// root, irrational area, or no two-squares representation fits).
inline std::vector<Embedding> embeddings(const SideTriple& t) {
  const BigInt hp = heron_product(t);
  const IsqrtResult root = isqrt(hp);
  if (!root.exact) return {};
  // doubled lattice area is integral, so the Heron root must be even
  if (mpz_odd_p(root.root.get_mpz_t())) return {};
  const BigInt two_area = BigInt(root.root / 2);

  const std::array<BigInt, 3> side = {t.a, t.b, t.c};
  std::array<std::vector<std::pair<BigInt, BigInt>>, 3> reps;
  for (int i = 0; i < 3; ++i) reps[i] = sum_two_squares_reps(BigInt(side[i] * side[i]));

  std::set<Embedding> found;
  for (int iab = 0; iab < 3; ++iab) {
    for (int iac = 0; iac < 3; ++iac) {
      if (iac == iab) continue;
      const int ibc = 3 - iab - iac;
      const BigInt& sAB = side[iab];
      const BigInt& sAC = side[iac];
      const BigInt& sBC = side[ibc];
      const BigInt dot2 = BigInt(sAB * sAB + sAC * sAC - sBC * sBC);  // = 2 * (B . C)
      if (mpz_odd_p(dot2.get_mpz_t())) continue;
      const BigInt dot = BigInt(dot2 / 2);
      const BigInt n2 = BigInt(sAB * sAB);
      for (const auto& [bx, by] : reps[iab]) {
        for (const int sgn : {1, -1}) {
          const BigInt u = BigInt(sgn * two_area);
          const BigInt cx_num = BigInt(dot * bx - u * by);
          if (cx_num % n2 != 0) continue;
          const BigInt cy_num = BigInt(dot * by + u * bx);
          if (cy_num % n2 != 0) continue;
          const LatticePoint2 B{bx, by};
          const LatticePoint2 C{BigInt(cx_num / n2), BigInt(cy_num / n2)};
          if (sqdist2(LatticePoint2{BigInt(0), BigInt(0)}, C) != sAC * sAC) continue;
          if (sqdist2(B, C) != sBC * sBC) continue;
          found.insert(canonical_embedding(B, C));
        }
      }
    }
  }

  std::vector<Embedding> out(found.begin(), found.end());
  for (const Embedding& e : out) {
    // area identity: hp = 16*Area^2 = 4*det^2 with det the doubled signed area
    const BigInt det = cross2(e.A, e.B, e.C);
    if (BigInt(4 * det * det) != hp)
      throw InternalError("embedding violates the half-determinant area identity");
    std::array<BigInt, 3> sq = {sqdist2(e.A, e.B), sqdist2(e.B, e.C), sqdist2(e.A, e.C)};
    std::sort(sq.begin(), sq.end());
    if (sq[2] != t.a * t.a || sq[1] != t.b * t.b || sq[0] != t.c * t.c)
      throw InternalError("embedding does not reproduce its side multiset");
  }
  return out;
}

struct TripleReport {
  SideTriple triple;
  bool heronian = false;
  bool pythagorean = false;
  std::vector<Embedding> embeddings;
  std::vector<std::uint64_t> per_embedding_extension_counts;
  bool erdos = false;  // true iff some embedding admits no extension point
};

// Full classification: embeddings plus the exact extension count of each.
inline TripleReport classify_triple(const SideTriple& t, const ExtendOptions& opts = {}) {
  TripleReport rep{t, false, false, {}, {}, false};
  rep.heronian = is_heronian(t);
  rep.pythagorean = is_pythagorean(t);
  rep.embeddings = embeddings(t);
  rep.per_embedding_extension_counts.reserve(rep.embeddings.size());
  bool any_zero = false;
  for (const Embedding& e : rep.embeddings) {
    const Figure2 fig({e.A, e.B, e.C});
    const ExtensionReport er = extension_points(fig, opts);
    rep.per_embedding_extension_counts.push_back(er.extension_points.size());
    any_zero = any_zero || er.extension_points.empty();
  }
  rep.erdos = !rep.embeddings.empty() && any_zero;
  return rep;
}

}  // namespace dioph
