#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "surfcensus/surfacelines.hpp"

using namespace surfcensus;

namespace {

HomogeneousForm fermat(std::uint32_t d, std::uint64_t p) {
  const auto e = std::to_string(d);
  return parse_form("x^" + e + " + y^" + e + " - z^" + e + " - w^" + e, PrimeField(p));
}

bool all_points_vanish(const HomogeneousForm& f, const ProjLine& L) {
  for (const auto& P : L.points(f.field()))
    if (oracle::slow_eval(f, P.coords()) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("line containment") {
  const PrimeField F(13);
  auto f = fermat(3, 13);
  // x = y * v with v^3 = -1 (v = -1 works), w = -z
  const auto on = ProjLine::from_equations(F, {Coords{1, 1, 0, 0}, Coords{0, 0, 1, 1}});
  CHECK(line_on_surface(f, on));
  const auto off = ProjLine::from_equations(F, {Coords{1, 0, 0, 0}, Coords{0, 1, 0, 0}});
  CHECK_FALSE(line_on_surface(f, off));
  CHECK_THROWS_AS(line_on_surface(parse_form("x^13 + y^13", F), on), std::invalid_argument);
}

TEST_CASE("pruned search equals exhaustive search") {
  std::mt19937_64 rng(77);
  for (std::uint64_t p : {5, 7}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 12; ++trial) {
      auto f = oracle::random_form(F, 2 + trial % 3, 3 + trial % 4, rng);
      if (!f || f->degree() >= p) continue;
      auto fast = lines_on_surface(*f, 1);
      auto slow = lines_on_surface_exhaustive(*f);
      CHECK(fast.lines == slow);
    }
  }
  // Surfaces with many lines: a plane contains p^2 + p + 1 lines; a union of planes more.
  for (auto text : {"x0", "x0 x1", "x0 x1 x2", "x0^2 - x1 x2", "x0 x1 - x2 x3"}) {
    auto f = parse_form(text, PrimeField(5));
    CHECK(lines_on_surface(f, 2).lines == lines_on_surface_exhaustive(f));
  }
  CHECK(lines_on_surface(parse_form("x0", PrimeField(5))).m() == 31);
  CHECK(lines_on_surface(parse_form("x0 x1 - x2 x3", PrimeField(5))).m() == 12);
}

TEST_CASE("Fermat surfaces carry 3d^2 lines") {
  SUBCASE("d=3, p=13") {
    auto f = fermat(3, 13);
    auto cfg = lines_on_surface(f);
    CHECK(cfg.m() == 27);
    CHECK(cfg.lines == fermat_expected_lines(3, PrimeField(13)));
    CHECK(cfg.lines == lines_on_surface_exhaustive(f));
    for (const auto& L : cfg.lines) {
      auto ev = transversality_along_line(f, L, 2);
      CHECK(ev.found_transversal_point);
      CHECK(ev.witness.has_value());
    }
  }
  SUBCASE("d=5, p=11") {
    auto lines = fermat_expected_lines(5, PrimeField(11));
    CHECK(lines.size() == 75);
    auto f = fermat(5, 11);
    for (const auto& L : lines) CHECK(all_points_vanish(f, L));
  }
  SUBCASE("d=4, p=13 has no fourth root of -1") {
    CHECK_THROWS_AS(fermat_expected_lines(4, PrimeField(13)), std::invalid_argument);
    CHECK_THROWS_AS(fermat_expected_lines(3, PrimeField(11)), std::invalid_argument);
  }
  SUBCASE("sweep p <= 31") {
    for (std::uint64_t p = 5; p <= 31; ++p) {
      if (!is_prime(p)) continue;
      const PrimeField F(p);
      for (std::uint32_t d = 3; d < p; ++d) {
        if ((p - 1) % d || !is_dth_power(F, p - 1, d)) continue;
        auto expected = fermat_expected_lines(d, F);
        auto found = lines_on_surface(fermat(d, p));
        CHECK(expected.size() == 3ull * d * d);
        CHECK(found.lines == expected);
      }
    }
  }
}

TEST_CASE("incidence and pairwise sums") {
  const PrimeField F(11);
  auto cfg = lines_on_surface(parse_form("x^5 + y^5 - z^5 - w^5", F));
  REQUIRE(cfg.m() == 75);
  for (std::size_t i = 0; i < cfg.m(); ++i) {
    CHECK(cfg.incidence[i][i] == 0);
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(cfg.incidence[i][j] == cfg.incidence[j][i]);
      CHECK(cfg.incidence[i][j] == lines_meet(F, cfg.lines[i], cfg.lines[j]));
    }
  }
  CHECK(pairwise_intersection_sum(cfg) == 1350);

  CHECK(pairwise_intersection_sum(LineConfiguration::from_lines(F, {})) == 0);
  const auto a = ProjLine::from_equations(F, {Coords{0, 0, 1, 0}, Coords{0, 0, 0, 1}});
  const auto b = ProjLine::from_equations(F, {Coords{1, 0, 0, 0}, Coords{0, 1, 0, 0}});
  const auto c = ProjLine::from_equations(F, {Coords{0, 1, 0, 0}, Coords{0, 0, 0, 1}});
  CHECK(pairwise_intersection_sum(LineConfiguration::from_lines(F, {a, b})) == 0);
  CHECK(pairwise_intersection_sum(LineConfiguration::from_lines(F, {a, c})) == 2);
}

TEST_CASE("transversality") {
  SUBCASE("half-Fermat p=11, every line") {
    auto f = parse_form("x^5 + y^5 - z^5 - w^5", PrimeField(11));
    for (const auto& L : lines_on_surface(f).lines) CHECK(transversality_along_line(f, L, 2).found_transversal_point);
  }
  SUBCASE("rational points alone never give a witness") {
    auto f = fermat(3, 13);
    for (const auto& L : lines_on_surface(f).lines) {
      auto ev = transversality_along_line(f, L, 1);
      CHECK_FALSE(ev.found_transversal_point);
      CHECK(ev.points_scanned == 14);
    }
  }
  SUBCASE("cone x0^2 = x2 x3 along x0 = x2 = 0") {
    const PrimeField F(7);
    auto f = parse_form("x0^2 - x2 x3", F);
    const auto L = ProjLine::from_equations(F, {Coords{1, 0, 0, 0}, Coords{0, 0, 1, 0}});
    REQUIRE(line_on_surface(f, L));
    auto ev = transversality_along_line(f, L, 2);
    CHECK_FALSE(ev.found_transversal_point);
    CHECK(ev.points_scanned == 7 * 7 + 1);
  }
  SUBCASE("line not on the surface") {
    auto f = fermat(3, 13);
    const auto L = ProjLine::from_equations(PrimeField(13), {Coords{1, 0, 0, 0}, Coords{0, 1, 0, 0}});
    CHECK_THROWS_AS(transversality_along_line(f, L, 2), std::invalid_argument);
  }
  SUBCASE("witness is a genuine rank-2 point") {
    const PrimeField F(13);
    const ExtField2 E(F);
    auto f = fermat(3, 13);
    auto s1 = *twist_s1(f);
    for (const auto& L : lines_on_surface(f).lines) {
      auto ev = transversality_along_line(f, L, 2);
      REQUIRE(ev.witness);
      const auto& x = ev.witness->coords;
      std::array<Fp2, 4> g, h;
      for (int i = 0; i < 4; ++i) {
        g[i] = evaluate(*partial_derivative(f, i), E, x);
        auto di = partial_derivative(s1, i);
        h[i] = di ? evaluate(*di, E, x) : E.zero();
      }
      bool independent = false;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) independent |= !E.sub(E.mul(g[i], h[j]), E.mul(g[j], h[i])).is_zero();
      CHECK(independent);
      CHECK(evaluate(f, E, x).is_zero());
    }
  }
}
