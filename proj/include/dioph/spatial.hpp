#pragma once

// Diophantine tetrahedra in Z^3: exact metric verification (integral edges,
// face areas, volume) and the complete lattice extension loop over the
// three-hyperboloid candidate systems.
//
// Derivation (apex D, base X_i ranging over the other three vertices,
// r = dist(P, D)):
//   dist(P, X_i) - dist(P, D) = e_i,   |e_i| <= dist(X_i, D)
// Squaring both distances and subtracting |P - D|^2 = r^2 leaves, per i,
//   2 (D - X_i) . P = 2 e_i r + beta_i,   beta_i = e_i^2 + |D|^2 - |X_i|^2
// The system matrix M = 2 [(D-X_1); (D-X_2); (D-X_3)] has determinant
// 8 det(B-A, C-A, D-A) != 0 for a genuine tetrahedron. With u = adj(M)(2e)
// and v = adj(M) beta, Cramer gives det P = u r + v, and |P - D|^2 = r^2
// becomes the radius quadratic
//   (|u|^2 - det^2) r^2 + 2 (u . w) r + |w|^2 = 0,   w = v - det D.
// Integer roots r >= 1 with r + e_i >= 0 and exactly divisible coordinates
// are kept and re-verified against the unsquared distance equations
// (squaring admits spurious roots). r = 0 forces P = D and is excluded.
//
// Lattice parity: for lattice P and integer r, |P-X|^2 - |P-D|^2 mod 2 is
// the coordinate-sum parity of X plus D, equal to dist(X, D)^2 mod 2, while
// the right side 2 e r + e^2 has parity e. Systems with e_i not congruent
// to dist(X_i, D) mod 2 therefore have no lattice solutions; the sweep
// skips them wholesale (they still count as decided). The same holds for
// |e_i - e_j| > dist(X_i, X_j), impossible by the triangle inequality.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/errors.hpp"
#include "dioph/int256.hpp"
#include "dioph/parallel.hpp"
#include "dioph/point.hpp"

namespace dioph {

// determinant of the rows (b - a), (c - a), (d - a): six times the signed
// tetrahedron volume; zero iff the four points are affinely dependent
inline BigInt signed_six_volume(const LatticePoint3& a, const LatticePoint3& b,
                                const LatticePoint3& c, const LatticePoint3& d) {
  BigInt ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  BigInt vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  BigInt wx = d.x - a.x, wy = d.y - a.y, wz = d.z - a.z;
  return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
}

// squared cross-product norm of the triangle (p, q, r): (2 area)^2, exact
inline BigInt doubled_area_sq3(const LatticePoint3& p, const LatticePoint3& q,
                               const LatticePoint3& r) {
  BigInt ux = q.x - p.x, uy = q.y - p.y, uz = q.z - p.z;
  BigInt vx = r.x - p.x, vy = r.y - p.y, vz = r.z - p.z;
  BigInt cx = uy * vz - uz * vy;
  BigInt cy = uz * vx - ux * vz;
  BigInt cz = ux * vy - uy * vx;
  return cx * cx + cy * cy + cz * cz;
}

class Tetrahedron {
 public:
  Tetrahedron(LatticePoint3 a, LatticePoint3 b, LatticePoint3 c, LatticePoint3 d)
      : v_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (sgn(signed_six_volume(v_[0], v_[1], v_[2], v_[3])) == 0)
      throw std::invalid_argument("tetrahedron vertices are affinely dependent");
  }

  const std::array<LatticePoint3, 4>& vertices() const { return v_; }
  const LatticePoint3& A() const { return v_[0]; }
  const LatticePoint3& B() const { return v_[1]; }
  const LatticePoint3& C() const { return v_[2]; }
  const LatticePoint3& D() const { return v_[3]; }

  bool contains(const LatticePoint3& p) const {
    for (const auto& v : v_)
      if (v == p) return true;
    return false;
  }

 private:
  std::array<LatticePoint3, 4> v_;
};

// vertex pairs and faces in the fixed reporting order
inline constexpr int kEdgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
inline constexpr int kFaceTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

struct TetraMetrics {
  std::array<std::optional<BigInt>, 6> edges;  // AB, AC, AD, BC, BD, CD
  std::array<std::optional<BigInt>, 4> faces;  // ABC, ABD, ACD, BCD areas
  std::optional<BigInt> volume;
  std::array<BigInt, 4> twice_areas_sq;  // (2 area)^2 per face, always exact
  BigInt six_volume;                     // |det(B-A, C-A, D-A)|, always exact
};

inline TetraMetrics tetra_metrics(const Tetrahedron& t) {
  const auto& v = t.vertices();
  TetraMetrics m;
  for (int i = 0; i < 6; ++i) m.edges[i] = integral_distance3(v[kEdgePairs[i][0]], v[kEdgePairs[i][1]]);
  for (int i = 0; i < 4; ++i) {
    m.twice_areas_sq[i] =
        doubled_area_sq3(v[kFaceTriples[i][0]], v[kFaceTriples[i][1]], v[kFaceTriples[i][2]]);
    IsqrtResult s = isqrt(m.twice_areas_sq[i]);
    // area = root/2 is integral iff the root exists and is even
    if (s.exact && mpz_even_p(s.root.get_mpz_t())) m.faces[i] = s.root / 2;
  }
  m.six_volume = abs(signed_six_volume(v[0], v[1], v[2], v[3]));
  if (mpz_divisible_ui_p(m.six_volume.get_mpz_t(), 6)) m.volume = m.six_volume / 6;
  return m;
}

// integral edge lengths, integral face areas, and integral volume
inline bool is_diophantine_tetrahedron(const Tetrahedron& t) {
  TetraMetrics m = tetra_metrics(t);
  for (const auto& e : m.edges)
    if (!e) return false;
  for (const auto& f : m.faces)
    if (!f) return false;
  return m.volume.has_value();
}

// One equation system of the 3D extension loop: find P with
// dist(P, X) - dist(P, D) = e_X for X in {A, B, C}.
struct CandidateSystem3 {
  LatticePoint3 A, B, C, D;  // D is the apex carrying the radius
  BigInt e1, e2, e3;
};

namespace detail {

struct Candidate3 {
  LatticePoint3 p;
  BigInt r;
};

// Exact elimination context over the base (X1, X2, X3; apex). Mirrors
// EngineBase2: a big-integer context that is always valid plus a fixed-width
// mirror used when precomputed worst-case bounds prove overflow impossible.
struct EngineBase3 {
  BigInt base[3][3];  // X_i coordinates, one row per base vertex
  BigInt apex[3];     // D coordinates
  BigInt adj[3][3];   // adjugate of M = 2 [(D-X_1); (D-X_2); (D-X_3)]
  BigInt det;         // det M
  BigInt k[3];        // |D|^2 - |X_i|^2

  bool fast = false;
  i64 f_base[3][3], f_apex[3], f_adj[3][3], f_det, f_k[3];

  // reusable mpz temporaries for the big-integer system path
  BigInt t_beta[3], t_u[3], t_v[3], t_w[3], t_c[3];
  BigInt t_A2, t_A1, t_A0, t_disc, t_root, t_r, t_n, t_d, t_s, t_acc, t_den;

  void init(const LatticePoint3& X1, const LatticePoint3& X2, const LatticePoint3& X3,
            const LatticePoint3& D, const BigInt& e1max, const BigInt& e2max,
            const BigInt& e3max) {
    const LatticePoint3* xs[3] = {&X1, &X2, &X3};
    for (int i = 0; i < 3; ++i) {
      base[i][0] = xs[i]->x;
      base[i][1] = xs[i]->y;
      base[i][2] = xs[i]->z;
    }
    apex[0] = D.x;
    apex[1] = D.y;
    apex[2] = D.z;
    BigInt m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = 2 * (apex[j] - base[i][j]);
    adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    adj[1][0] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    adj[0][1] = -(m[0][1] * m[2][2] - m[0][2] * m[2][1]);
    adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    adj[2][1] = -(m[0][0] * m[2][1] - m[0][1] * m[2][0]);
    adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    adj[1][2] = -(m[0][0] * m[1][2] - m[0][2] * m[1][0]);
    adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    if (sgn(det) == 0) throw std::invalid_argument("candidate system base is degenerate");
    // M adj = det I guards the hand-expanded cofactors
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        BigInt s = m[i][0] * adj[0][j] + m[i][1] * adj[1][j] + m[i][2] * adj[2][j];
        if (s != (i == j ? det : BigInt(0))) throw InternalError("adjugate identity failed");
      }
    BigInt dd = apex[0] * apex[0] + apex[1] * apex[1] + apex[2] * apex[2];
    for (int i = 0; i < 3; ++i)
      k[i] = dd - (base[i][0] * base[i][0] + base[i][1] * base[i][1] + base[i][2] * base[i][2]);
    fast = decide_fast(e1max, e2max, e3max);
    if (fast) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          f_base[i][j] = i64(base[i][j].get_si());
          f_adj[i][j] = i64(adj[i][j].get_si());
        }
        f_apex[i] = i64(apex[i].get_si());
        f_k[i] = i64(k[i].get_si());
      }
      f_det = i64(det.get_si());
    }
  }

 private:
  // Worst-case magnitude bounds over the whole (e1, e2, e3) loop, computed
  // exactly; when every bound clears its threshold no int64/int128
  // expression in the fast path can overflow (discriminants use U256).
  bool decide_fast(const BigInt& e1max, const BigInt& e2max, const BigInt& e3max) const {
    const BigInt lim61 = BigInt(1) << 61;
    const BigInt lim31 = BigInt(1) << 31;
    const BigInt* emax[3] = {&e1max, &e2max, &e3max};
    if (abs(det) >= lim61) return false;
    BigInt bbeta[3];
    for (int i = 0; i < 3; ++i) {
      if (*emax[i] >= lim31) return false;
      for (int j = 0; j < 3; ++j)
        if (abs(base[i][j]) >= lim61 || abs(adj[i][j]) >= lim61) return false;
      if (abs(apex[i]) >= lim61 || abs(k[i]) >= lim61) return false;
      bbeta[i] = *emax[i] * *emax[i] + abs(k[i]);
      if (bbeta[i] >= lim61) return false;
    }
    for (int j = 0; j < 3; ++j) {
      BigInt bu = 0, bv = 0;
      for (int i = 0; i < 3; ++i) {
        bu += 2 * abs(adj[j][i]) * *emax[i];
        bv += abs(adj[j][i]) * bbeta[i];
      }
      BigInt bw = bv + abs(apex[j]) * abs(det);
      if (bu >= lim61 || bw >= lim61) return false;
    }
    return true;
  }
};

// Arbitrary-precision solve of one (e1, e2, e3) system. Appends verified
// candidates (vs the base vertices only).
inline void solve_system3_big(EngineBase3& e, const BigInt& e1, const BigInt& e2,
                              const BigInt& e3, std::vector<Candidate3>& out) {
  const BigInt* es[3] = {&e1, &e2, &e3};
  for (int i = 0; i < 3; ++i) e.t_beta[i] = *es[i] * *es[i] + e.k[i];
  for (int j = 0; j < 3; ++j) {
    e.t_u[j] = 2 * (e.adj[j][0] * *es[0] + e.adj[j][1] * *es[1] + e.adj[j][2] * *es[2]);
    e.t_v[j] = e.adj[j][0] * e.t_beta[0] + e.adj[j][1] * e.t_beta[1] + e.adj[j][2] * e.t_beta[2];
    e.t_w[j] = e.t_v[j] - e.apex[j] * e.det;
  }
  e.t_A2 = e.t_u[0] * e.t_u[0] + e.t_u[1] * e.t_u[1] + e.t_u[2] * e.t_u[2] - e.det * e.det;
  e.t_A1 = 2 * (e.t_u[0] * e.t_w[0] + e.t_u[1] * e.t_w[1] + e.t_u[2] * e.t_w[2]);
  e.t_A0 = e.t_w[0] * e.t_w[0] + e.t_w[1] * e.t_w[1] + e.t_w[2] * e.t_w[2];

  auto try_root = [&](const BigInt& r) {
    if (sgn(r) <= 0) return;  // r = 0 forces P = D, a figure point
    if (sgn(r + *es[0]) < 0 || sgn(r + *es[1]) < 0 || sgn(r + *es[2]) < 0) return;
    for (int j = 0; j < 3; ++j) {
      e.t_n = e.t_u[j] * r + e.t_v[j];
      if (!mpz_divisible_p(e.t_n.get_mpz_t(), e.det.get_mpz_t())) return;
      mpz_divexact(e.t_c[j].get_mpz_t(), e.t_n.get_mpz_t(), e.det.get_mpz_t());
    }
    // unsquared verification vs all four base points
    for (int i = 0; i < 3; ++i) {
      e.t_s = r + *es[i];
      e.t_acc = 0;
      for (int j = 0; j < 3; ++j) {
        e.t_d = e.t_c[j] - e.base[i][j];
        e.t_acc += e.t_d * e.t_d;
      }
      if (e.t_acc != e.t_s * e.t_s) return;
    }
    e.t_acc = 0;
    for (int j = 0; j < 3; ++j) {
      e.t_d = e.t_c[j] - e.apex[j];
      e.t_acc += e.t_d * e.t_d;
    }
    if (e.t_acc != r * r) return;
    out.push_back(Candidate3{LatticePoint3{e.t_c[0], e.t_c[1], e.t_c[2]}, r});
  };

  if (sgn(e.t_A2) == 0) {
    if (sgn(e.t_A1) == 0) {
      if (sgn(e.t_A0) == 0)
        throw InternalError("radius quadratic identically zero for non-degenerate base");
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
  e.t_den = 2 * e.t_A2;
  e.t_r = -e.t_A1 + e.t_root;
  if (mpz_divisible_p(e.t_r.get_mpz_t(), e.t_den.get_mpz_t())) {
    BigInt r = e.t_r / e.t_den;
    try_root(r);
  }
  if (sgn(e.t_root) != 0) {
    e.t_r = -e.t_A1 - e.t_root;
    if (mpz_divisible_p(e.t_r.get_mpz_t(), e.t_den.get_mpz_t())) {
      BigInt r = e.t_r / e.t_den;
      try_root(r);
    }
  }
}

// Fixed-width solve of one (e1, e2, e3) system. Returns false when a root
// or coordinate leaves the proven-safe window and the caller must re-solve
// this single system with solve_system3_big.
inline bool solve_system3_fast(const EngineBase3& e, i64 e1, i64 e2, i64 e3,
                               std::vector<Candidate3>& out) {
  const std::size_t mark = out.size();
  const i64 es[3] = {e1, e2, e3};
  i64 beta[3], u[3], v[3], w[3];
  for (int i = 0; i < 3; ++i) beta[i] = es[i] * es[i] + e.f_k[i];
  for (int j = 0; j < 3; ++j) {
    u[j] = 2 * (e.f_adj[j][0] * es[0] + e.f_adj[j][1] * es[1] + e.f_adj[j][2] * es[2]);
    v[j] = e.f_adj[j][0] * beta[0] + e.f_adj[j][1] * beta[1] + e.f_adj[j][2] * beta[2];
    w[j] = v[j] - e.f_apex[j] * e.f_det;
  }
  i128 A2 = i128(u[0]) * u[0] + i128(u[1]) * u[1] + i128(u[2]) * u[2] - i128(e.f_det) * e.f_det;
  i128 A1 = 2 * (i128(u[0]) * w[0] + i128(u[1]) * w[1] + i128(u[2]) * w[2]);
  i128 A0 = i128(w[0]) * w[0] + i128(w[1]) * w[1] + i128(w[2]) * w[2];

  bool overflow = false;
  auto try_root = [&](i128 r) {
    if (overflow) return;
    if (r <= 0) return;  // r = 0 forces P = D, a figure point
    if (r + es[0] < 0 || r + es[1] < 0 || r + es[2] < 0) return;
    if (r > kRootSafe) {
      overflow = true;
      return;
    }
    i128 c[3];
    for (int j = 0; j < 3; ++j) {
      i128 n = i128(u[j]) * r + v[j];
      if (n % e.f_det) return;
      c[j] = n / e.f_det;
      if (c[j] > kCoordSafe || c[j] < -kCoordSafe) {
        overflow = true;
        return;
      }
    }
    for (int i = 0; i < 3; ++i) {
      i128 s = r + es[i], acc = 0;
      for (int j = 0; j < 3; ++j) {
        i128 d = c[j] - e.f_base[i][j];
        acc += d * d;
      }
      if (acc != s * s) return;
    }
    i128 acc = 0;
    for (int j = 0; j < 3; ++j) {
      i128 d = c[j] - e.f_apex[j];
      acc += d * d;
    }
    if (acc != r * r) return;
    out.push_back(Candidate3{
        LatticePoint3{BigInt(long(c[0])), BigInt(long(c[1])), BigInt(long(c[2]))},
        BigInt(long(r))});
  };

  if (A2 == 0) {
    if (A1 == 0) {
      if (A0 == 0)
        throw InternalError("radius quadratic identically zero for non-degenerate base");
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
inline void solve_system3(EngineBase3& e, long e1, long e2, long e3,
                          std::vector<Candidate3>& out) {
  if (e.fast) {
    if (solve_system3_fast(e, e1, e2, e3, out)) return;
  }
  solve_system3_big(e, BigInt(e1), BigInt(e2), BigInt(e3), out);
}

}  // namespace detail

// Exactly the lattice points satisfying the system with all four distances
// integral; reference path. Sorted lexicographically. P = D never appears
// (its radius is zero); the other base vertices may.
inline std::vector<LatticePoint3> solve_candidate_system_3d(const CandidateSystem3& sys) {
  auto d1 = integral_distance3(sys.A, sys.D);
  auto d2 = integral_distance3(sys.B, sys.D);
  auto d3 = integral_distance3(sys.C, sys.D);
  if (!d1 || !d2 || !d3)
    throw std::invalid_argument("candidate system base distances must be integral");
  if (abs(sys.e1) > *d1 || abs(sys.e2) > *d2 || abs(sys.e3) > *d3)
    throw std::invalid_argument("candidate system offsets exceed their distance bounds");

  detail::EngineBase3 e;
  e.init(sys.A, sys.B, sys.C, sys.D, abs(sys.e1), abs(sys.e2), abs(sys.e3));
  std::vector<detail::Candidate3> cand;
  detail::solve_system3_big(e, sys.e1, sys.e2, sys.e3, cand);
  std::vector<LatticePoint3> out;
  out.reserve(cand.size());
  for (auto& c : cand) out.push_back(std::move(c.p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ExtensionReport3 {
  Tetrahedron tetra;
  std::array<LatticePoint3, 4> base;  // X1, X2, X3, apex
  std::vector<LatticePoint3> extension_points;
  std::uint64_t systems_solved = 0;
  std::uint64_t systems_total = 0;
  bool complete = true;  // false: stopped at the budget, emptiness undecided
  std::chrono::duration<double> elapsed{};
};

struct ExtendOptions3 {
  unsigned workers = 0;       // 0: use available parallelism
  std::uint64_t budget = 0;   // 0: unlimited; else decide only this many systems
  bool force_bigint = false;  // disable the fixed-width path (testing)
  std::function<void(std::uint64_t, std::uint64_t)> progress;  // (solved, total), ~1 Hz
};

namespace detail {

struct Found3 {
  LatticePoint3 p;
  long e1, e2, e3;
};

}  // namespace detail

// The complete, certified set of lattice extension points of the
// tetrahedron: for the apex minimizing the loop volume, every (e1, e2, e3)
// system is decided in canonical order (e1-major). Points are re-verified
// directly; vertices are excluded. A budget truncates the sweep after
// exactly that many systems: the result is then a sound lower set, not an
// emptiness certificate, and complete is false.
inline ExtensionReport3 extension_points_3d(const Tetrahedron& t,
                                            const ExtendOptions3& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& v = t.vertices();

  BigInt edist[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto d = integral_distance3(v[i], v[j]);
      if (!d) throw std::invalid_argument("extension loop requires integral edge lengths");
      edist[i][j] = *d;
      edist[j][i] = *d;
    }

  // apex minimizing prod (2 dist(X, apex) + 1); ties keep the lowest index
  int apex = 0;
  BigInt best_prod;
  for (int cand = 0; cand < 4; ++cand) {
    BigInt prod = 1;
    for (int i = 0; i < 4; ++i)
      if (i != cand) prod *= 2 * edist[i][cand] + 1;
    if (cand == 0 || prod < best_prod) {
      best_prod = prod;
      apex = cand;
    }
  }
  std::array<int, 3> bi{};
  {
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != apex) bi[k++] = i;
  }

  long d[3];
  for (int k = 0; k < 3; ++k) {
    if (!edist[bi[k]][apex].fits_slong_p())
      throw std::range_error("extension loop range exceeds supported size");
    d[k] = edist[bi[k]][apex].get_si();
  }
  const std::uint64_t rows = 2 * std::uint64_t(d[0]) + 1;
  const std::uint64_t cols = 2 * std::uint64_t(d[1]) + 1;
  const std::uint64_t depth = 2 * std::uint64_t(d[2]) + 1;
  const unsigned __int128 total128 =
      (unsigned __int128)(rows) * cols * depth;
  if (total128 > UINT64_MAX) throw std::range_error("extension loop range exceeds supported size");
  const std::uint64_t total = std::uint64_t(total128);
  const std::uint64_t eff = (opts.budget != 0 && opts.budget < total) ? opts.budget : total;

  // base-pair distances feed the triangle-inequality screen; disable it
  // rather than fail when a pair distance exceeds the fixed-width range
  long dpair[3][3] = {};
  bool screen[3][3] = {};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const BigInt& e = edist[bi[a]][bi[b]];
      if (e.fits_slong_p()) {
        dpair[a][b] = e.get_si();
        screen[a][b] = true;
      }
    }

  detail::EngineBase3 proto;
  proto.init(v[bi[0]], v[bi[1]], v[bi[2]], v[apex], edist[bi[0]][apex], edist[bi[1]][apex],
             edist[bi[2]][apex]);
  if (opts.force_bigint) proto.fast = false;

  const unsigned workers = opts.workers ? opts.workers : default_workers();
  // chunked by e1 only; chunk layout is a function of the range alone, so
  // results are independent of the worker count
  const std::uint64_t nchunks64 = std::min<std::uint64_t>(rows, 1024);
  const std::size_t nchunks = std::size_t(nchunks64);

  std::atomic<std::uint64_t> solved{0};
  detail::ProgressWatcher watcher(opts.progress, solved, eff);

  std::vector<detail::Found3> found;
  std::uint64_t decided_accum = 0;

  using TaskResult = std::pair<std::vector<detail::Found3>, std::uint64_t>;
  std::function<TaskResult(std::size_t)> task = [&](std::size_t chunk) {
    std::vector<detail::Found3> out;
    const std::uint64_t lo64 = chunk * rows / nchunks64;
    const std::uint64_t hi64 = (chunk + 1) * rows / nchunks64;
    const std::uint64_t begin = lo64 * cols * depth;
    const std::uint64_t end = hi64 * cols * depth;
    const std::uint64_t quota = begin >= eff ? 0 : std::min(end, eff) - begin;
    if (quota == 0) return TaskResult{std::move(out), 0};

    detail::EngineBase3 e = proto;  // private temporaries per task
    std::vector<detail::Candidate3> cand;
    auto keep = [&](std::vector<detail::Candidate3>& cs, long e1, long e2, long e3) {
      for (auto& c : cs) {
        if (t.contains(c.p)) continue;
        out.push_back(detail::Found3{std::move(c.p), e1, e2, e3});
      }
    };

    if (quota == end - begin) {
      // whole chunk below the budget: screened sweep
      for (std::uint64_t i1 = lo64; i1 < hi64; ++i1) {
        const long e1 = -d[0] + long(i1);
        if (((e1 ^ d[0]) & 1) == 0) {
          for (long e2 = -d[1]; e2 <= d[1]; ++e2) {
            if (((e2 ^ d[1]) & 1) != 0) continue;
            if (screen[0][1] && (e1 - e2 > dpair[0][1] || e2 - e1 > dpair[0][1])) continue;
            long lo3 = -d[2], hi3 = d[2];
            if (screen[0][2]) {
              lo3 = std::max(lo3, e1 - dpair[0][2]);
              hi3 = std::min(hi3, e1 + dpair[0][2]);
            }
            if (screen[1][2]) {
              lo3 = std::max(lo3, e2 - dpair[1][2]);
              hi3 = std::min(hi3, e2 + dpair[1][2]);
            }
            if (((lo3 ^ d[2]) & 1) != 0) ++lo3;  // align to the forced parity
            for (long e3 = lo3; e3 <= hi3; e3 += 2) {
              cand.clear();
              detail::solve_system3(e, e1, e2, e3, cand);
              keep(cand, e1, e2, e3);
            }
          }
        }
        solved.fetch_add(cols * depth, std::memory_order_relaxed);
      }
    } else {
      // the budget boundary falls inside this chunk: plain indexed sweep
      bool stop = false;
      for (std::uint64_t i1 = lo64; i1 < hi64 && !stop; ++i1) {
        const long e1 = -d[0] + long(i1);
        const bool p1 = ((e1 ^ d[0]) & 1) == 0;
        for (long e2 = -d[1]; e2 <= d[1] && !stop; ++e2) {
          const bool p2 = p1 && ((e2 ^ d[1]) & 1) == 0;
          for (long e3 = -d[2]; e3 <= d[2]; ++e3) {
            const std::uint64_t g =
                (i1 * cols + std::uint64_t(e2 + d[1])) * depth + std::uint64_t(e3 + d[2]);
            if (g >= eff) {
              stop = true;
              break;
            }
            if (!p2 || ((e3 ^ d[2]) & 1) != 0) continue;  // decided by parity
            cand.clear();
            detail::solve_system3(e, e1, e2, e3, cand);
            keep(cand, e1, e2, e3);
          }
        }
      }
      solved.fetch_add(quota, std::memory_order_relaxed);
    }
    return TaskResult{std::move(out), quota};
  };

  std::function<bool(std::size_t, TaskResult&&)> commit = [&](std::size_t, TaskResult&& r) {
    for (auto& f : r.first) found.push_back(std::move(f));
    decided_accum += r.second;
    return true;
  };
  run_ordered<TaskResult>(nchunks, workers, task, commit);

  if (decided_accum != eff)
    throw InternalError("extension loop did not cover the full (e1, e2, e3) range");

  // distinct (e1, e2, e3) triples must yield disjoint solution sets
  std::map<std::array<BigInt, 3>, std::array<long, 3>> seen;
  for (const auto& f : found) {
    std::array<BigInt, 3> key{f.p.x, f.p.y, f.p.z};
    std::array<long, 3> sys{f.e1, f.e2, f.e3};
    auto [it, inserted] = seen.emplace(std::move(key), sys);
    if (!inserted && it->second != sys)
      throw InternalError("extension point found under two distinct (e1, e2, e3) systems");
  }

  ExtensionReport3 report{t,
                          {v[bi[0]], v[bi[1]], v[bi[2]], v[apex]},
                          {},
                          eff,
                          total,
                          eff == total,
                          {}};
  report.extension_points.reserve(found.size());
  for (auto& f : found) report.extension_points.push_back(std::move(f.p));
  std::sort(report.extension_points.begin(), report.extension_points.end());
  report.extension_points.erase(
      std::unique(report.extension_points.begin(), report.extension_points.end()),
      report.extension_points.end());

  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

// True iff the tetrahedron admits no lattice extension point. Requires a
// fully Diophantine tetrahedron; any budget is ignored because a truncated
// sweep cannot certify emptiness.
inline bool is_erdos_tetrahedron(const Tetrahedron& t, const ExtendOptions3& opts = {}) {
  if (!is_diophantine_tetrahedron(t))
    throw std::invalid_argument("Erdos verification requires a Diophantine tetrahedron");
  ExtendOptions3 o = opts;
  o.budget = 0;
  return extension_points_3d(t, o).extension_points.empty();
}

}  // namespace dioph
