#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>

#include "dioph/chi.hpp"

using namespace dioph;

TEST_CASE("hypotenuse counts by direct enumeration") {
  REQUIRE(chi_bruteforce(5) == 1);   // 3-4-5 only
  REQUIRE(chi_bruteforce(4) == 0);
  REQUIRE(chi_bruteforce(25) == 2);  // (7,24), (15,20)
  REQUIRE(chi_bruteforce(65) == 4);  // (16,63), (25,60), (33,56), (39,52)
  REQUIRE(chi_bruteforce(1) == 0);
  REQUIRE_THROWS_AS(chi_bruteforce(0), std::invalid_argument);
  REQUIRE_THROWS_AS(chi_bruteforce(kMaxHypotenuse + 1), std::range_error);
}

TEST_CASE("divisor classes mod 4") {
  REQUIRE(divisor_count_mod4(25) == std::pair<std::uint64_t, std::uint64_t>{3, 0});
  REQUIRE(divisor_count_mod4(9) == std::pair<std::uint64_t, std::uint64_t>{2, 1});
  REQUIRE(divisor_count_mod4(1) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
  REQUIRE_THROWS_AS(divisor_count_mod4(0), std::invalid_argument);

  // independent full enumeration: class counts and the tau identity
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    std::uint64_t t1 = 0, t3 = 0, rest = 0, tau = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) {
        ++tau;
        if (d % 4 == 1)
          ++t1;
        else if (d % 4 == 3)
          ++t3;
        else
          ++rest;
      }
    auto [d1, d3] = divisor_count_mod4(n);
    REQUIRE(d1 == t1);
    REQUIRE(d3 == t3);
    REQUIRE(d1 + d3 + rest == tau);
  }
}

TEST_CASE("closed form equals enumeration on every hypotenuse to 2000") {
  REQUIRE(chi_divisor(5) == 1);
  REQUIRE(chi_divisor(3) == 0);
  REQUIRE(chi_divisor(65) == 4);
  for (std::uint64_t l = 1; l <= 2000; ++l) {
    ChiResult r = compute_chi(l);
    REQUIRE(r.agree);
    REQUIRE(r.chi_brute == r.chi_divisor);
  }
}

TEST_CASE("the literal printed formula disagrees and is reported as is") {
  REQUIRE(chi_paper_literal(5) == 2);   // true count is 1
  REQUIRE(chi_paper_literal(3) == 0);
  REQUIRE(chi_paper_literal(1) == 1);
  REQUIRE(chi_paper_literal(25) == 3);  // true count is 2
  ChiResult r = compute_chi(5);
  REQUIRE(r.chi_brute == 1);
  REQUIRE(r.chi_divisor == 1);
  REQUIRE(r.chi_paper_literal == 2);
  REQUIRE(r.agree);
}

TEST_CASE("hypotenuses with no factor 1 mod 4 admit no triangle") {
  for (std::uint64_t l = 1; l <= 500; ++l) {
    bool has_p1 = false;
    std::uint64_t m = l;
    for (std::uint64_t p = 2; p * p <= m; ++p)
      while (m % p == 0) {
        if (p % 4 == 1) has_p1 = true;
        m /= p;
      }
    if (m > 1 && m % 4 == 1) has_p1 = true;
    if (!has_p1) {
      REQUIRE(chi_divisor(l) == 0);
      REQUIRE(chi_bruteforce(l) == 0);
    }
  }
}
