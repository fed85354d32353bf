#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "dioph/engine2d.hpp"
#include "dioph/errors.hpp"
#include "dioph/figure.hpp"
#include "dioph/parallel.hpp"
#include "dioph/quadratic.hpp"

namespace dioph {

// One equation system of the extension loop: find P with
// dist(P,A) - dist(P,C) = d1 and dist(P,B) - dist(P,C) = d2.
struct CandidateSystem {
  LatticePoint2 A, B, C;
  BigInt d1, d2;
};

// Quadratic in the auxiliary radius r = dist(P, C) after eliminating x, y.
struct RadialQuadratic {
  Rational a2, a1, a0;
};

struct ExtensionReport {
  Figure2 figure;
  std::array<LatticePoint2, 3> base;
  std::vector<LatticePoint2> extension_points;
  std::uint64_t systems_solved = 0;
  std::chrono::duration<double> elapsed{};
};

struct ExtendOptions {
  unsigned workers = 0;               // 0: use available parallelism
  bool force_bigint = false;          // disable the fixed-width path (testing)
  std::function<void(std::uint64_t, std::uint64_t)> progress;  // (solved, total), ~1 Hz
};

// Cheapest non-collinear base triple: minimizes the extension-loop size
// (2 dist(A,C) + 1)(2 dist(B,C) + 1); ties broken by lexicographic point
// order. All points collinear admit infinitely many extensions.
inline std::array<LatticePoint2, 3> choose_base(const Figure2& figure) {
  const auto& pts = figure.points();
  const std::size_t n = pts.size();
  if (n < 3) throw std::invalid_argument("figure needs at least 3 points");
  bool have = false;
  std::array<std::size_t, 3> best{};
  BigInt best_prod;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (sgn(cross2(pts[i], pts[j], pts[k])) == 0) continue;
        BigInt prod = (2 * figure.dist(i, k) + 1) * (2 * figure.dist(j, k) + 1);
        bool better = false;
        if (!have) {
          better = true;
        } else {
          int c = cmp(prod, best_prod);
          if (c < 0) better = true;
          if (c == 0) {
            std::array<std::size_t, 3> cand{i, j, k};
            auto lex_less = [&](const std::array<std::size_t, 3>& x,
                                const std::array<std::size_t, 3>& y) {
              for (int t = 0; t < 3; ++t) {
                if (pts[x[t]] < pts[y[t]]) return true;
                if (pts[y[t]] < pts[x[t]]) return false;
              }
              return false;
            };
            better = lex_less(cand, best);
          }
        }
        if (better) {
          have = true;
          best = {i, j, k};
          best_prod = prod;
        }
      }
    }
  if (!have)
    throw InfiniteFamilyError(
        "all figure points are collinear; integral-distance extensions form an infinite family");
  return {pts[best[0]], pts[best[1]], pts[best[2]]};
}

// Exact elimination of x, y from the squared system: coefficients of the
// quadratic in r, scaled by det^2 (same roots, integer entries).
inline RadialQuadratic build_radial_quadratic(const CandidateSystem& sys) {
  detail::EngineBase2 e;
  e.init(sys.A, sys.B, sys.C, abs(sys.d1), abs(sys.d2));
  BigInt beta1 = sys.d1 * sys.d1 + e.k1;
  BigInt beta2 = sys.d2 * sys.d2 + e.k2;
  BigInt u1 = 2 * (sys.d1 * e.m22 - sys.d2 * e.m12);
  BigInt u2 = 2 * (sys.d2 * e.m11 - sys.d1 * e.m21);
  BigInt v1 = beta1 * e.m22 - beta2 * e.m12;
  BigInt v2 = beta2 * e.m11 - beta1 * e.m21;
  BigInt w1 = v1 - sys.C.x * e.det;
  BigInt w2 = v2 - sys.C.y * e.det;
  return RadialQuadratic{make_rational(u1 * u1 + u2 * u2 - e.det * e.det),
                         make_rational(2 * (u1 * w1 + u2 * w2)),
                         make_rational(w1 * w1 + w2 * w2)};
}

// Exactly the lattice points satisfying the system with all three
// distances integral; reference path through the rational quadratic
// solver. Sorted lexicographically.
inline std::vector<LatticePoint2> solve_candidate_system(const CandidateSystem& sys) {
  auto dac = integral_distance2(sys.A, sys.C);
  auto dbc = integral_distance2(sys.B, sys.C);
  if (!dac || !dbc)
    throw std::invalid_argument("candidate system base distances must be integral");
  if (abs(sys.d1) > *dac || abs(sys.d2) > *dbc)
    throw std::invalid_argument("candidate system offsets exceed their distance bounds");

  detail::EngineBase2 e;
  e.init(sys.A, sys.B, sys.C, abs(sys.d1), abs(sys.d2));
  BigInt beta1 = sys.d1 * sys.d1 + e.k1;
  BigInt beta2 = sys.d2 * sys.d2 + e.k2;
  BigInt u1 = 2 * (sys.d1 * e.m22 - sys.d2 * e.m12);
  BigInt u2 = 2 * (sys.d2 * e.m11 - sys.d1 * e.m21);
  BigInt v1 = beta1 * e.m22 - beta2 * e.m12;
  BigInt v2 = beta2 * e.m11 - beta1 * e.m21;

  RadialQuadratic q = build_radial_quadratic(sys);
  if (sgn(q.a2) == 0 && sgn(q.a1) == 0 && sgn(q.a0) == 0)
    throw InternalError("radius quadratic identically zero for non-collinear base");

  std::vector<LatticePoint2> out;
  for (const Rational& rho : solve_quadratic_exact(q.a2, q.a1, q.a0)) {
    if (!is_integer(rho)) continue;
    BigInt r = rho.get_num();
    if (sgn(r) < 0) continue;
    if (sgn(r + sys.d1) < 0 || sgn(r + sys.d2) < 0) continue;
    BigInt xn = u1 * r + v1, yn = u2 * r + v2;
    if (!mpz_divisible_p(xn.get_mpz_t(), e.det.get_mpz_t())) continue;
    if (!mpz_divisible_p(yn.get_mpz_t(), e.det.get_mpz_t())) continue;
    LatticePoint2 p{xn / e.det, yn / e.det};
    // final unsquared verification (squaring admits spurious roots)
    auto da = integral_distance2(p, sys.A);
    auto db = integral_distance2(p, sys.B);
    auto dc = integral_distance2(p, sys.C);
    if (!da || !db || !dc) continue;
    if (*da != r + sys.d1 || *db != r + sys.d2 || *dc != r) continue;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

struct FoundPoint {
  LatticePoint2 p;
  long d1, d2;
};

}  // namespace detail

// The complete, certified set of lattice extension points of the figure:
// loops d1 over [-dist(A,C), dist(A,C)] and d2 over [-dist(B,C), dist(B,C)]
// for the cheapest base, solves every candidate system exactly, and keeps
// points at integral distance to every figure point. Every kept point is
// re-verified directly; membership in the figure is excluded.
inline ExtensionReport extension_points(const Figure2& figure, const ExtendOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  auto base = choose_base(figure);
  const LatticePoint2 &A = base[0], &B = base[1], &C = base[2];
  BigInt dac_b = *integral_distance2(A, C);
  BigInt dbc_b = *integral_distance2(B, C);
  if (!dac_b.fits_slong_p() || !dbc_b.fits_slong_p())
    throw std::range_error("extension loop range exceeds supported size");
  const long dac = dac_b.get_si(), dbc = dbc_b.get_si();
  const std::uint64_t rows = 2 * std::uint64_t(dac) + 1;
  const std::uint64_t cols = 2 * std::uint64_t(dbc) + 1;
  if (rows != 0 && cols > UINT64_MAX / rows)
    throw std::range_error("extension loop range exceeds supported size");
  const std::uint64_t total = rows * cols;

  detail::EngineBase2 proto;
  proto.init(A, B, C, dac_b, dbc_b);
  if (opts.force_bigint) proto.fast = false;

  const unsigned workers = opts.workers ? opts.workers : default_workers();
  // chunked by d1 only; chunk layout is a function of the range alone, so
  // results are independent of the worker count
  const std::uint64_t nchunks64 = std::min<std::uint64_t>(rows, 1024);
  const std::size_t nchunks = std::size_t(nchunks64);

  std::atomic<std::uint64_t> solved{0};
  detail::ProgressWatcher watcher(opts.progress, solved, total);

  std::vector<detail::FoundPoint> found;
  std::uint64_t systems_accum = 0;

  std::function<std::pair<std::vector<detail::FoundPoint>, std::uint64_t>(std::size_t)> task =
      [&](std::size_t chunk) {
        detail::EngineBase2 e = proto;  // private temporaries per task
        std::vector<detail::FoundPoint> out;
        std::vector<detail::Candidate2> cand;
        std::uint64_t systems = 0;
        const std::uint64_t lo64 = chunk * rows / nchunks64;
        const std::uint64_t hi64 = (chunk + 1) * rows / nchunks64;
        for (std::uint64_t idx = lo64; idx < hi64; ++idx) {
          const long d1 = -dac + long(idx);
          for (long d2 = -dbc; d2 <= dbc; ++d2) {
            cand.clear();
            detail::solve_system(e, d1, d2, cand);
            ++systems;
            for (auto& c : cand) {
              if (figure.contains(c.p)) continue;
              bool ok = true;
              for (const auto& q : figure.points()) {
                if (!integral_distance2(c.p, q)) { ok = false; break; }
              }
              if (ok) out.push_back(detail::FoundPoint{std::move(c.p), d1, d2});
            }
          }
          solved.fetch_add(cols, std::memory_order_relaxed);
        }
        return std::make_pair(std::move(out), systems);
      };
  std::function<bool(std::size_t, std::pair<std::vector<detail::FoundPoint>, std::uint64_t>&&)>
      commit = [&](std::size_t, std::pair<std::vector<detail::FoundPoint>, std::uint64_t>&& r) {
        for (auto& f : r.first) found.push_back(std::move(f));
        systems_accum += r.second;
        return true;
      };
  run_ordered<std::pair<std::vector<detail::FoundPoint>, std::uint64_t>>(nchunks, workers, task,
                                                                         commit);

  if (systems_accum != total)
    throw InternalError("extension loop did not cover the full (d1, d2) range");

  // distinct (d1, d2) pairs must yield disjoint solution sets
  std::map<std::pair<BigInt, BigInt>, std::pair<long, long>> seen;
  for (const auto& f : found) {
    auto key = std::make_pair(f.p.x, f.p.y);
    auto [it, inserted] = seen.emplace(key, std::make_pair(f.d1, f.d2));
    if (!inserted && it->second != std::make_pair(f.d1, f.d2))
      throw InternalError("extension point found under two distinct (d1, d2) systems");
  }

  ExtensionReport report{figure, base, {}, total, {}};
  report.extension_points.reserve(found.size());
  for (auto& f : found) report.extension_points.push_back(std::move(f.p));
  std::sort(report.extension_points.begin(), report.extension_points.end());
  report.extension_points.erase(
      std::unique(report.extension_points.begin(), report.extension_points.end()),
      report.extension_points.end());

  // finiteness sanity (Erdos-Anning): at most 4 (k+1)^2 extension points
  BigInt k = std::max(dac_b, dbc_b);
  if (BigInt(report.extension_points.size()) > 4 * (k + 1) * (k + 1))
    throw InternalError("extension count exceeds the finiteness bound");

  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

inline bool is_erdos_figure(const Figure2& figure, const ExtendOptions& opts = {}) {
  return extension_points(figure, opts).extension_points.empty();
}

}  // namespace dioph
