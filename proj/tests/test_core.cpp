#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/int256.hpp"
#include "dioph/parallel.hpp"
#include "dioph/point.hpp"
#include "dioph/quadratic.hpp"
#include "dioph/rational.hpp"

using namespace dioph;

TEST_CASE("isqrt basics") {
  auto r0 = isqrt(BigInt(0));
  REQUIRE(r0.root == 0);
  REQUIRE(r0.exact);
  auto r25 = isqrt(BigInt(25));
  REQUIRE(r25.root == 5);
  REQUIRE(r25.exact);
  auto rbig = isqrt(BigInt(184041));
  REQUIRE(rbig.root == 429);
  REQUIRE(rbig.exact);
  REQUIRE(BigInt(429) * 429 == 184041);
  REQUIRE_THROWS_AS(isqrt(BigInt(-1)), std::domain_error);
}

TEST_CASE("isqrt bracketing and exactness over [0, 10^6]") {
  std::unordered_set<std::uint64_t> squares;
  for (std::uint64_t k = 0; k * k <= 1000000; ++k) squares.insert(k * k);
  for (std::uint64_t n = 0; n <= 1000000; ++n) {
    auto r = isqrt(BigInt(static_cast<unsigned long>(n)));
    std::uint64_t root = r.root.get_ui();
    REQUIRE(root * root <= n);
    REQUIRE(n < (root + 1) * (root + 1));
    REQUIRE(r.exact == (squares.count(n) != 0));
  }
}

TEST_CASE("isqrt on large values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    BigInt v = BigInt(rng()) * BigInt(rng()) + BigInt(rng());
    auto r = isqrt(v);
    REQUIRE(r.root * r.root <= v);
    REQUIRE(v < (r.root + 1) * (r.root + 1));
    REQUIRE(r.exact == (r.root * r.root == v));
    auto rs = isqrt(v * v);
    REQUIRE(rs.exact);
    REQUIRE(rs.root == v);
  }
}

TEST_CASE("is_square_u64 agrees with exact arithmetic") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t n = rng() >> (i % 32);
    std::uint64_t root = 0;
    bool sq = is_square_u64(n, &root);
    bool truth = is_perfect_square(BigInt(static_cast<unsigned long>(n)));
    REQUIRE(sq == truth);
    if (sq) REQUIRE(root * root == n);
  }
  // every square must pass
  for (std::uint64_t k = 0; k < 5000; ++k) {
    std::uint64_t root = 0;
    REQUIRE(is_square_u64(k * k, &root));
    REQUIRE(root == k);
  }
}

TEST_CASE("sqdist2 examples and symmetries") {
  LatticePoint2 o{0, 0};
  REQUIRE(sqdist2(o, LatticePoint2{3, 4}) == 25);
  REQUIRE(sqdist2(o, o) == 0);
  REQUIRE(sqdist2(LatticePoint2{288, -84}, LatticePoint2{176, 0}) == 19600);

  std::mt19937_64 rng(13);
  auto coord = [&] { return BigInt(long(rng() % 4001) - 2000); };
  for (int i = 0; i < 500; ++i) {
    LatticePoint2 p{coord(), coord()}, q{coord(), coord()};
    BigInt d = sqdist2(p, q);
    REQUIRE(sqdist2(q, p) == d);
    REQUIRE((d == 0) == (p == q));
    BigInt tx = coord(), ty = coord();
    LatticePoint2 pt{p.x + tx, p.y + ty}, qt{q.x + tx, q.y + ty};
    REQUIRE(sqdist2(pt, qt) == d);
    // the 8 lattice symmetries preserve squared distance
    const int syms[8][4] = {{1, 0, 0, 1},  {-1, 0, 0, 1},  {1, 0, 0, -1},  {-1, 0, 0, -1},
                            {0, 1, 1, 0},  {0, -1, 1, 0},  {0, 1, -1, 0},  {0, -1, -1, 0}};
    for (const auto& s : syms) {
      LatticePoint2 ps{s[0] * p.x + s[1] * p.y, s[2] * p.x + s[3] * p.y};
      LatticePoint2 qs{s[0] * q.x + s[1] * q.y, s[2] * q.x + s[3] * q.y};
      REQUIRE(sqdist2(ps, qs) == d);
    }
  }
}

TEST_CASE("integral_distance2 examples") {
  LatticePoint2 o{0, 0};
  auto d1 = integral_distance2(o, LatticePoint2{3, 4});
  REQUIRE(d1.has_value());
  REQUIRE(*d1 == 5);
  REQUIRE_FALSE(integral_distance2(o, LatticePoint2{1, 1}).has_value());
  auto d3 = integral_distance2(o, LatticePoint2{6, 0});
  REQUIRE(d3.has_value());
  REQUIRE(*d3 == 6);
}

TEST_CASE("integral_distance3") {
  LatticePoint3 o{0, 0, 0};
  auto d = integral_distance3(o, LatticePoint3{396, 132, 99});
  REQUIRE(d.has_value());
  REQUIRE(*d == 429);
  REQUIRE_FALSE(integral_distance3(o, LatticePoint3{1, 1, 0}).has_value());
  REQUIRE(sqdist3(LatticePoint3{1, 2, 3}, LatticePoint3{4, 6, 3}) == 25);
}

TEST_CASE("rational canonical form") {
  Rational r = make_rational(BigInt(4), BigInt(-6));
  REQUIRE(r.get_num() == -2);
  REQUIRE(r.get_den() == 3);
  Rational z = make_rational(BigInt(0), BigInt(17));
  REQUIRE(z.get_num() == 0);
  REQUIRE(z.get_den() == 1);
  REQUIRE_THROWS_AS(make_rational(BigInt(1), BigInt(0)), std::domain_error);
  REQUIRE(is_integer(make_rational(BigInt(10), BigInt(5))));
  REQUIRE_FALSE(is_integer(make_rational(BigInt(7), BigInt(2))));
}

TEST_CASE("solve_quadratic_exact examples") {
  auto roots = solve_quadratic_exact(make_rational(BigInt(1)), make_rational(BigInt(0)),
                                     make_rational(BigInt(-25)));
  REQUIRE(roots.size() == 2);
  REQUIRE(roots[0] == make_rational(BigInt(-5)));
  REQUIRE(roots[1] == make_rational(BigInt(5)));

  auto lin = solve_quadratic_exact(make_rational(BigInt(0)), make_rational(BigInt(2)),
                                   make_rational(BigInt(-7)));
  REQUIRE(lin.size() == 1);
  REQUIRE(lin[0] == make_rational(BigInt(7), BigInt(2)));

  auto irr = solve_quadratic_exact(make_rational(BigInt(1)), make_rational(BigInt(0)),
                                   make_rational(BigInt(-2)));
  REQUIRE(irr.empty());

  REQUIRE_THROWS_AS(solve_quadratic_exact(make_rational(BigInt(0)), make_rational(BigInt(0)),
                                          make_rational(BigInt(0))),
                    DegenerateEquationError);

  // constant nonzero equation: no roots
  auto none = solve_quadratic_exact(make_rational(BigInt(0)), make_rational(BigInt(0)),
                                    make_rational(BigInt(3)));
  REQUIRE(none.empty());
}

TEST_CASE("solve_quadratic_exact reconstructs planted rational roots") {
  std::mt19937_64 rng(17);
  auto small = [&] { return long(rng() % 41) - 20; };
  for (int i = 0; i < 400; ++i) {
    // a2 (t - p)(t - q) with rational p, q
    BigInt pn = small(), pd = std::abs(small()) + 1;
    BigInt qn = small(), qd = std::abs(small()) + 1;
    Rational p = make_rational(pn, pd), q = make_rational(qn, qd);
    BigInt a = small();
    if (sgn(a) == 0) a = 3;
    Rational ra = make_rational(a);
    Rational a2 = ra, a1 = -ra * (p + q), a0 = ra * p * q;
    auto roots = solve_quadratic_exact(a2, a1, a0);
    if (p == q) {
      REQUIRE(roots.size() == 1);
      REQUIRE(roots[0] == p);
    } else {
      REQUIRE(roots.size() == 2);
      REQUIRE(roots[0] == std::min(p, q));
      REQUIRE(roots[1] == std::max(p, q));
    }
    for (const auto& t : roots) {
      Rational val = a2 * t * t + a1 * t + a0;
      REQUIRE(sgn(val) == 0);
    }
  }
}

TEST_CASE("u256 arithmetic against GMP") {
  std::mt19937_64 rng(19);
  auto rnd128 = [&] {
    return (static_cast<unsigned __int128>(rng()) << 64) | rng();
  };
  auto big_from_u128 = [](unsigned __int128 v) -> BigInt {
    BigInt hi = static_cast<unsigned long>(v >> 64);
    BigInt lo = static_cast<unsigned long>(v);
    return BigInt((hi << 64) + lo);
  };
  for (int i = 0; i < 5000; ++i) {
    unsigned __int128 a = rnd128() >> (i % 64), b = rnd128() >> (i % 48);
    U256 m = mul_u128(a, b);
    BigInt truth = big_from_u128(a) * big_from_u128(b);
    REQUIRE(to_bigint(m) == truth);
    U256 s = add_u256(m, mul_u128(b, b));
    BigInt bb = big_from_u128(b) * big_from_u128(b);
    BigInt sum = truth + bb;
    BigInt two256 = BigInt(1) << 256;
    // add_u256 wraps mod 2^256; callers guarantee no overflow by bounds analysis
    REQUIRE(to_bigint(s) == (sum < two256 ? sum : BigInt(sum - two256)));
    if (sum < two256) {
      REQUIRE(cmp_u256(s, m) == (bb == 0 ? 0 : 1));
    }
    // subtraction is exact mod 2^256 even when the addition wrapped
    REQUIRE(to_bigint(sub_u256(s, m)) == bb);
    REQUIRE(mod_small_u256(m, 63, two128_mod63) == mpz_fdiv_ui(truth.get_mpz_t(), 63));
    REQUIRE(mod_small_u256(m, 65, two128_mod65) == mpz_fdiv_ui(truth.get_mpz_t(), 65));
    REQUIRE(to_u256(truth).lo == m.lo);
    REQUIRE(to_u256(truth).hi == m.hi);
  }
}

TEST_CASE("u256 perfect-square detection") {
  std::mt19937_64 rng(23);
  auto rnd128 = [&] {
    return (static_cast<unsigned __int128>(rng()) << 64) | rng();
  };
  int screened_out = 0;
  for (int i = 0; i < 4000; ++i) {
    unsigned __int128 z = rnd128() >> (i % 80 + 8);
    U256 sq = mul_u128(z, z);
    REQUIRE(maybe_square_u256(sq));
    unsigned __int128 root = 0;
    REQUIRE(sqrt_exact_u256(sq, &root));
    REQUIRE(root == z);
    if (z != 0) {
      U256 off = add_u256(sq, U256{(unsigned __int128)(2 * (i % 3) + 1), 0});
      bool maybe = maybe_square_u256(off);
      if (!maybe) {
        ++screened_out;
      } else {
        unsigned __int128 r2 = 0;
        bool exact = sqrt_exact_u256(off, &r2);
        // off = z^2 + small odd < (z+1)^2 for z >= 2, so never a square
        if (z >= 2) REQUIRE_FALSE(exact);
      }
    }
  }
  REQUIRE(screened_out > 3000);  // screens must do real work
}

TEST_CASE("ordered parallel runner") {
  for (unsigned workers : {1u, 2u, 8u}) {
    std::vector<std::size_t> order;
    std::function<std::size_t(std::size_t)> task = [](std::size_t i) { return i * i; };
    std::function<bool(std::size_t, std::size_t&&)> commit = [&](std::size_t i, std::size_t&& r) {
      REQUIRE(r == i * i);
      order.push_back(i);
      return true;
    };
    run_ordered<std::size_t>(200, workers, task, commit);
    REQUIRE(order.size() == 200);
    for (std::size_t i = 0; i < order.size(); ++i) REQUIRE(order[i] == i);
  }
}

TEST_CASE("ordered parallel runner cancellation") {
  for (unsigned workers : {1u, 4u}) {
    std::size_t committed = 0;
    std::function<int(std::size_t)> task = [](std::size_t i) { return int(i); };
    std::function<bool(std::size_t, int&&)> commit = [&](std::size_t i, int&&) {
      committed = i + 1;
      return i < 10;
    };
    run_ordered<int>(100000, workers, task, commit);
    REQUIRE(committed == 11);
  }
}

TEST_CASE("ordered parallel runner propagates task exceptions") {
  std::function<int(std::size_t)> task = [](std::size_t i) -> int {
    if (i == 17) throw std::runtime_error("boom");
    return int(i);
  };
  std::size_t committed = 0;
  std::function<bool(std::size_t, int&&)> commit = [&](std::size_t, int&&) {
    ++committed;
    return true;
  };
  REQUIRE_THROWS_WITH((run_ordered<int>(64, 4, task, commit)), "boom");
  REQUIRE(committed == 17);
}
