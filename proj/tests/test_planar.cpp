#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/figure.hpp"
#include "dioph/planar_extension.hpp"
#include "dioph/point.hpp"

using namespace dioph;

namespace {

LatticePoint2 pt(long x, long y) { return LatticePoint2{BigInt(x), BigInt(y)}; }

Figure2 right_triangle() { return Figure2({pt(0, 0), pt(4, 0), pt(0, 3)}); }

// all lattice points of the window at integral distance to every figure point
std::vector<LatticePoint2> window_scan(const Figure2& fig, long lo, long hi) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (const auto& p : fig.points()) pts.emplace_back(p.x.get_si(), p.y.get_si());
  std::vector<LatticePoint2> out;
  for (long x = lo; x <= hi; ++x)
    for (long y = lo; y <= hi; ++y) {
      bool ok = true;
      for (auto [px, py] : pts) {
        const std::int64_t dx = px - x, dy = py - y;
        std::uint64_t root = 0;
        if (!is_square_u64(std::uint64_t(dx * dx + dy * dy), &root)) {
          ok = false;
          break;
        }
      }
      if (ok && !fig.contains(pt(x, y))) out.push_back(pt(x, y));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint2> in_window(const std::vector<LatticePoint2>& pts, long lo, long hi) {
  std::vector<LatticePoint2> out;
  for (const auto& p : pts)
    if (p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("figure validation") {
  REQUIRE_NOTHROW(right_triangle());
  // side sqrt(2) is not integral
  REQUIRE_THROWS_AS(Figure2({pt(0, 0), pt(1, 0), pt(0, 1)}), std::invalid_argument);
  REQUIRE_THROWS_AS(Figure2({pt(0, 0), pt(3, 0), pt(3, 0)}), std::invalid_argument);
  Figure2 f = right_triangle();
  REQUIRE(f.size() == 3);
  REQUIRE(f.dist(0, 1) == 4);
  REQUIRE(f.dist(0, 2) == 3);
  REQUIRE(f.dist(1, 2) == 5);
  REQUIRE(f.dist(2, 1) == 5);
  REQUIRE(f.contains(pt(4, 0)));
  REQUIRE_FALSE(f.contains(pt(4, 3)));
}

TEST_CASE("base choice minimizes the loop product") {
  // isoceles 6,5,5: the side of length 6 must be opposite the shared vertex
  Figure2 iso({pt(0, 0), pt(6, 0), pt(3, 4)});
  auto base = choose_base(iso);
  REQUIRE(base[0] == pt(0, 0));
  REQUIRE(base[1] == pt(6, 0));
  REQUIRE(base[2] == pt(3, 4));

  // right triangle: legs 3 and 4 meet at the origin; lexicographic tie-break
  auto rt = choose_base(right_triangle());
  REQUIRE(rt[0] == pt(0, 3));
  REQUIRE(rt[1] == pt(4, 0));
  REQUIRE(rt[2] == pt(0, 0));

  // 4-point figure: minimal product over all ordered non-collinear triples
  Figure2 rect({pt(0, 0), pt(4, 0), pt(0, 3), pt(4, 3)});
  auto rb = choose_base(rect);
  REQUIRE(rb[0] == pt(0, 0));
  REQUIRE(rb[1] == pt(4, 3));
  REQUIRE(rb[2] == pt(0, 3));

  Figure2 line({pt(0, 0), pt(3, 0), pt(7, 0)});
  REQUIRE_THROWS_AS(choose_base(line), InfiniteFamilyError);
}

TEST_CASE("candidate system solutions") {
  const LatticePoint2 A = pt(0, 0), B = pt(4, 0), C = pt(0, 3);

  // dist(P,A) - dist(P,C) = 1, dist(P,B) - dist(P,C) = -1 holds at P = (4,3)
  auto sols = solve_candidate_system({A, B, C, BigInt(1), BigInt(-1)});
  REQUIRE(std::find(sols.begin(), sols.end(), pt(4, 3)) != sols.end());

  // circumcenter (2, 3/2) is not a lattice point
  REQUIRE(solve_candidate_system({A, B, C, BigInt(0), BigInt(0)}).empty());

  // degenerate branches |d1| = dist(A,C): solutions on the line through A, C
  auto on_ray = solve_candidate_system({A, B, C, BigInt(3), BigInt(5)});
  REQUIRE(on_ray == std::vector<LatticePoint2>{pt(0, 3)});
  auto at_a = solve_candidate_system({A, B, C, BigInt(-3), BigInt(1)});
  REQUIRE(at_a == std::vector<LatticePoint2>{pt(0, 0)});
  auto below = solve_candidate_system({A, B, C, BigInt(-3), BigInt(-1)});
  REQUIRE(below == std::vector<LatticePoint2>{pt(0, -3)});

  // offsets beyond their distance bounds are rejected
  REQUIRE_THROWS_AS(solve_candidate_system({A, B, C, BigInt(4), BigInt(0)}),
                    std::invalid_argument);
  // non-integral base distance is rejected
  REQUIRE_THROWS_AS(solve_candidate_system({A, B, pt(1, 1), BigInt(0), BigInt(0)}),
                    std::invalid_argument);
}

TEST_CASE("radial quadratic admits the known root") {
  // P = (4,3) has r = dist(P, (0,3)) = 4 under (d1, d2) = (1, -1)
  RadialQuadratic q = build_radial_quadratic(
      {pt(0, 0), pt(4, 0), pt(0, 3), BigInt(1), BigInt(-1)});
  auto roots = solve_quadratic_exact(q.a2, q.a1, q.a0);
  bool has4 = false;
  for (const Rational& r : roots) has4 = has4 || r == 4;
  REQUIRE(has4);
}

TEST_CASE("right triangle extends") {
  ExtensionReport rep = extension_points(right_triangle());
  REQUIRE_FALSE(rep.extension_points.empty());
  REQUIRE(std::find(rep.extension_points.begin(), rep.extension_points.end(), pt(4, 3)) !=
          rep.extension_points.end());
  REQUIRE(rep.base[0] == pt(0, 3));
  REQUIRE(rep.base[1] == pt(4, 0));
  REQUIRE(rep.base[2] == pt(0, 0));
  REQUIRE(rep.systems_solved == 63);  // (2*3+1)(2*4+1)
  REQUIRE(std::is_sorted(rep.extension_points.begin(), rep.extension_points.end()));
  REQUIRE_FALSE(is_erdos_figure(right_triangle()));
}

TEST_CASE("window oracle on the right triangle and the rectangle") {
  for (const Figure2& fig :
       {right_triangle(), Figure2({pt(0, 0), pt(4, 0), pt(0, 3), pt(4, 3)})}) {
    ExtensionReport rep = extension_points(fig);
    REQUIRE(in_window(rep.extension_points, -200, 200) == window_scan(fig, -200, 200));
  }
}

TEST_CASE("collinear figures have no finite extension set") {
  Figure2 line({pt(0, 0), pt(3, 0), pt(7, 0)});
  REQUIRE_THROWS_AS(extension_points(line), InfiniteFamilyError);
}

TEST_CASE("randomized window oracle, reference path, and worker counts") {
  // all lattice points with integral norm <= 60
  std::vector<LatticePoint2> circle;
  for (long x = -60; x <= 60; ++x)
    for (long y = -60; y <= 60; ++y) {
      std::uint64_t root = 0;
      if (x * x + y * y <= 3600 && is_square_u64(std::uint64_t(x * x + y * y), &root))
        circle.push_back(pt(x, y));
    }
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, circle.size() - 1);
  int made = 0;
  while (made < 50) {
    const LatticePoint2 &B = circle[pick(rng)], &C = circle[pick(rng)];
    if (B == C || sgn(B.x) == 0 || sgn(cross2(pt(0, 0), B, C)) == 0) continue;
    auto bc = integral_distance2(B, C);
    if (!bc || *bc == 0 || *bc > 60) continue;
    Figure2 fig({pt(0, 0), B, C});
    ++made;

    ExtensionReport rep = extension_points(fig);
    // completeness and soundness inside the window, against brute force
    REQUIRE(in_window(rep.extension_points, -200, 200) == window_scan(fig, -200, 200));

    // the all-bigint reference path must agree with the fixed-width engine
    ExtendOptions ref;
    ref.force_bigint = true;
    ExtensionReport slow = extension_points(fig, ref);
    REQUIRE(slow.extension_points == rep.extension_points);
    REQUIRE(slow.systems_solved == rep.systems_solved);
    REQUIRE(slow.base == rep.base);

    if (made % 10 == 0) {
      for (unsigned workers : {1u, 2u, 8u}) {
        ExtendOptions w;
        w.workers = workers;
        ExtensionReport wr = extension_points(fig, w);
        REQUIRE(wr.extension_points == rep.extension_points);
        REQUIRE(wr.systems_solved == rep.systems_solved);
      }
    }
  }
}

TEST_CASE("smallest unextendable triangle embedding") {
  // side multiset {2066, 1803, 505}
  Figure2 fig({pt(0, 0), pt(-2030, -384), pt(-1653, -720)});
  REQUIRE(fig.dist(0, 1) == 2066);
  REQUIRE(fig.dist(0, 2) == 1803);
  REQUIRE(fig.dist(1, 2) == 505);
  ExtensionReport rep = extension_points(fig);
  REQUIRE(rep.extension_points.empty());
  REQUIRE(rep.systems_solved == std::uint64_t(2 * 1803 + 1) * (2 * 505 + 1));
  REQUIRE(is_erdos_figure(fig));
}
