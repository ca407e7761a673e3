#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcensus/divisor.hpp"

using namespace surfcensus;

TEST_CASE("line self-intersection") {
  CHECK(line_self_intersection(3) == -1);
  CHECK(line_self_intersection(2) == 0);
  CHECK(line_self_intersection(5) == -3);
}

TEST_CASE("degree triple from the twists") {
  auto t = DegreeTriple::from_twist(5, 11);
  CHECK(t.d == 5);
  CHECK(t.d1 == 15);
  CHECK(t.d2 == 25);
  CHECK_THROWS_AS(DegreeTriple::from_twist(0, 11), std::invalid_argument);
}

TEST_CASE("deg Gamma") {
  CHECK(deg_gamma(DegreeTriple::from_twist(5, 11), 75, 1350) == 0);
  CHECK(deg_gamma(DegreeTriple::from_twist(3, 7), 27, 270) == 0);
  const DegreeTriple t{4, 9, 14};
  CHECK(deg_gamma(t, 0, 0) == 4 * 9 * 14);
  CHECK_THROWS_AS(deg_gamma(t, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(deg_gamma(t, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(deg_gamma(t, 1, -2), std::invalid_argument);
}

TEST_CASE("expanded and unexpanded forms agree") {
  for (std::int64_t d = 1; d <= 12; ++d)
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 101, 997, 10007})
      for (std::int64_t m = 0; m <= 60; m += 7)
        for (std::int64_t pairs = 0; pairs <= m * (m - 1); pairs += 2 + m) {
          const auto t = DegreeTriple::from_twist(d, p);
          const std::int64_t even = pairs - pairs % 2;
          CHECK(deg_gamma(t, m, even) == deg_gamma_unexpanded(t, m, even));
        }
}

TEST_CASE("sandwich inequality") {
  const auto t = DegreeTriple::from_twist(5, 11);
  CHECK(0 - (Int128{5} * 15 * 25 - 75 * (5 + 15 + 25)) == 1500);
  CHECK(lemma1_check(t, 75, 0));

  const DegreeTriple u{4, 9, 14};
  const Int128 base = u.d * u.d1 * u.d2 - (u.d + u.d1 + u.d2);
  CHECK(lemma1_check(u, 1, base + 2));
  CHECK_FALSE(lemma1_check(u, 1, base + 1));
  CHECK_FALSE(lemma1_check(u, 1, base + 3));

  // The sandwich holds whenever the pairwise sum lies in [0, m(m-1)].
  for (std::int64_t m = 1; m <= 30; ++m)
    for (std::int64_t pairs = 0; pairs <= m * (m - 1); pairs += 2) CHECK(lemma1_check(u, m, deg_gamma(u, m, pairs)));
}
