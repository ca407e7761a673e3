#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcensus/bounds.hpp"

using namespace surfcensus;

namespace {

// Independent evaluation with exact sixths: every bound times 6 is an integer.
Int128 felipe6(Int128 p, Int128 d, Int128 m) { return d * (d + p - 1) * (d + 2 * p - 2) + 6 * m * (p + 1); }
Int128 improved6(Int128 p, Int128 d, Int128 m) { return felipe6(p, d, m) - (3 * m * (d + p - 1) - m * (m + 1)); }

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(1875, 6).str() == "625/2");
  CHECK(Rational(12, 6).str() == "2");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(1, 3) / Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(-1, 3) < Rational(-1, 4));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(checked_mul(Int128{1} << 100, Int128{1} << 40), std::overflow_error);
  CHECK(to_string_i128(-(Int128{1} << 100)) == "-1267650600228229401496703205376");
}

TEST_CASE("evaluate_bounds examples") {
  auto r = evaluate_bounds(11, 3, std::nullopt);
  CHECK(r.deligne.value == Rational(199));
  CHECK(r.m_assumed);
  CHECK(r.m == 27);

  auto q = evaluate_bounds(11, 5, 75);
  CHECK(q.felipe.value == Rational(2425, 2));
  CHECK(q.improved.value == Rational(1600));
  CHECK(q.felipe.value < q.improved.value);
  CHECK(75 > 3 * 5 + 3 * 11 - 4);

  // Quartics with 64 lines: improved = 4(p+3)(2p+2)/6 + 32p + 661 + 1/3.
  for (std::int64_t p : {19, 23, 29, 101, 997}) {
    auto b = evaluate_bounds(p, 4, 64);
    CHECK(b.improved.value == Rational(4 * (p + 3) * (2 * p + 2), 6) + Rational(32 * p + 661) + Rational(1, 3));
  }
}

TEST_CASE("closed forms of each bound") {
  for (std::int64_t d = 1; d <= 9; ++d)
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 97}) {
      auto b = evaluate_bounds(p, d, 5);
      CHECK(b.deligne.value == Rational(p * p + 1 + (d * d * d - 4 * d * d + 6 * d - 2) * p));
      CHECK(b.voloch_square.value == Rational((d - 1) * (p + 1) * (p + 1) + p + 1));
      CHECK(b.voloch_noline.value == Rational((d - 1) * p * p + (d - 2) * (p + 1) + 1));
      CHECK(b.felipe.value == Rational(felipe6(p, d, 5), 6));
      CHECK(b.felipe_plus.value == Rational(d * (d + p - 1) * (d + 2 * p - 2) + 6 * d * (11 * d - 24) * (p + 1), 6));
      CHECK(b.improved.value == Rational(improved6(p, d, 5), 6));
      const Int128 cap = 11 * d * d - 30 * d + 18;
      CHECK(b.improved_no_m.value ==
            Rational(d * (d + p - 1) * (d + 2 * p - 2) + cap * (11 * d * d - 33 * d + 28 + 3 * p), 6));
      // Eq. (2.4) is Eq. (2.3) at the line cap.
      if (cap >= 0) CHECK(b.improved_no_m.value == evaluate_bounds(p, d, static_cast<std::int64_t>(cap)).improved.value);
    }
}

TEST_CASE("gap identity and sign") {
  for (std::int64_t d = 3; d <= 20; ++d)
    for (std::int64_t p = 2; p <= 997; p += (p < 50 ? 1 : 37))
      for (std::int64_t m = 0; m <= 200; m += 9) {
        auto b = evaluate_bounds(p, d, m);
        const Rational gap = b.felipe.value - b.improved.value;
        CHECK(gap == improvement_gap(p, d, m));
        CHECK(gap == Rational(3 * m * (d + p - 1) - m * (m + 1), 6));
        CHECK((gap >= Rational(0)) == (m <= 3 * d + 3 * p - 4));
      }
}

TEST_CASE("improved bound increases with p") {
  for (std::int64_t d = 3; d <= 8; ++d)
    for (std::int64_t m = 0; m <= 100; m += 5)
      for (std::int64_t p = 5; p < 400; ++p) {
        if (m > 3 * d + 3 * p - 4) continue;
        CHECK(evaluate_bounds(p, d, m).improved.value < evaluate_bounds(p + 1, d, m).improved.value);
      }
}

TEST_CASE("threshold and cap") {
  CHECK(improvement_threshold(3) == Rational(22, 3));
  CHECK(improvement_threshold(4) == Rational(22));
  CHECK(improvement_threshold(5) == Rational(44));
  CHECK(bauer_rams_cap(3) == 27);
  CHECK(bauer_rams_cap(4) == 74);
  CHECK(bauer_rams_cap(5) == 143);
  // Above the threshold Eq. (2.4) is below Eq. (1.2).
  for (std::int64_t d = 3; d <= 12; ++d)
    for (std::int64_t p = 2; p < 2000; ++p) {
      if (Rational(p) <= improvement_threshold(d)) continue;
      auto b = evaluate_bounds(p, d, std::nullopt);
      CHECK(b.improved_no_m.value < b.felipe_plus.value);
    }
  // For quartics with at most 64 lines the improvement starts at p = 19.
  for (std::int64_t p : {11, 13, 17}) CHECK(evaluate_bounds(p, 4, 64).improved.value >= evaluate_bounds(p, 4, 64).felipe.value);
  for (std::int64_t p : {19, 23, 29, 31}) CHECK(evaluate_bounds(p, 4, 64).improved.value < evaluate_bounds(p, 4, 64).felipe.value);
}

TEST_CASE("applicability flags") {
  auto unknown = evaluate_bounds(11, 5, 75);
  CHECK(unknown.deligne.applicability == Applicability::unverified);
  auto good = evaluate_bounds(11, 5, 75, {true, true});
  CHECK(good.regime);
  CHECK(good.deligne.applicability == Applicability::holds);
  CHECK(good.felipe.applicability == Applicability::holds);
  CHECK(good.improved.applicability == Applicability::holds);
  CHECK(good.voloch_noline.applicability == Applicability::violated);
  auto singular = evaluate_bounds(11, 5, 75, {false, true});
  CHECK(singular.felipe.applicability == Applicability::violated);
  auto high = evaluate_bounds(5, 7, 0, {true, true});
  CHECK_FALSE(high.regime);
  CHECK(high.improved.applicability == Applicability::violated);
  CHECK(high.voloch_noline.applicability == Applicability::holds);
  auto no_m = evaluate_bounds(11, 5, std::nullopt, {true, true});
  CHECK(no_m.felipe.applicability == Applicability::unverified);
  CHECK(no_m.improved_no_m.applicability == Applicability::holds);
  CHECK(to_string(Applicability::holds) == "holds");
  CHECK_THROWS_AS(evaluate_bounds(11, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bounds(11, 3, -1), std::invalid_argument);
}

TEST_CASE("quintic-type felipe equals 28u^3") {
  for (std::int64_t p : {11, 31, 41, 61, 71}) {
    const std::int64_t u = (p - 1) / 5;
    CHECK(evaluate_bounds(p, 2 * u, 0).felipe.value == Rational(28 * u * u * u));
  }
}

TEST_CASE("count_within") {
  CHECK(count_within(1212, Rational(2425, 2)));
  CHECK_FALSE(count_within(1213, Rational(2425, 2)));
  CHECK(count_within(1600, Rational(1600)));
}
