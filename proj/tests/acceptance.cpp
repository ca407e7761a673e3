// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "surfcensus/bounds.hpp"
#include "surfcensus/cyclotomic.hpp"
#include "surfcensus/divisor.hpp"
#include "surfcensus/families.hpp"
#include "surfcensus/parallel.hpp"
#include "surfcensus/projgeom.hpp"
#include "surfcensus/surfacecount.hpp"
#include "surfcensus/surfacelines.hpp"

using namespace surfcensus;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

using Criterion = std::function<void(Verdict&)>;

std::uint64_t cube(std::uint64_t u) { return u * u * u; }

std::uint64_t half_fermat_formula(std::uint64_t p) { return 3 * (p * p * p - 3 * p * p + 11 * p - 9) / 8; }

// Family of the first RREF row's support: x0 paired with x1, x2 or x3.
int pairing_type(const ProjLine& L) {
  for (int j = 1; j < 4; ++j)
    if (L.rows()[0][j] != 0) return j;
  return 0;
}

void ac1(Verdict& v) {
  for (std::uint64_t p : {7, 11, 13, 19, 23}) {
    const auto f = build_family({FamilyName::half_fermat, p});
    const auto count = count_points_generic(f);
    const auto slow = oracle::slow_count(f);
    v.expect(count == half_fermat_formula(p) && slow == count, "p=" + std::to_string(p));
    v.notes << " p=" << p << ":" << count;
  }
}

void ac2(Verdict& v) {
  for (std::uint64_t p : {7, 11, 13}) {
    const std::uint64_t u = (p - 1) / 2;
    const auto f = build_family({FamilyName::half_fermat, p});
    const auto lines = lines_on_surface(f);
    std::uint64_t same = 0, cross = 0;
    for (std::size_t i = 0; i < lines.m(); ++i)
      for (std::size_t j = 0; j < lines.m(); ++j)
        if (lines.incidence[i][j]) (pairing_type(lines.lines[i]) == pairing_type(lines.lines[j]) ? same : cross) += 1;
    const auto m = static_cast<std::int64_t>(lines.m());
    const auto pair_sum = pairwise_intersection_sum(lines);
    const auto gamma = deg_gamma(DegreeTriple::from_twist(f.degree(), static_cast<std::int64_t>(p)), m, pair_sum);
    const std::string tag = "p=" + std::to_string(p);
    v.expect(lines.m() == 3 * u * u, tag + " m");
    v.expect(same == 3 * u * u * (p - 3), tag + " same-type pairs");
    v.expect(cross == 6 * u * u * u, tag + " cross-type pairs");
    v.expect(static_cast<std::uint64_t>(pair_sum) == 6 * u * u * (p - 2), tag + " pair sum");
    v.expect(gamma == 0, tag + " deg Gamma");
    v.notes << " p=" << p << ": m=" << m << " pairs=(" << same << "," << cross << "," << pair_sum << ") degGamma="
            << to_string_i128(gamma);
  }
}

void ac3(Verdict& v) {
  for (std::uint64_t p : {7, 11, 13}) {
    const auto f = build_family({FamilyName::half_fermat, p});
    const auto lines = lines_on_surface(f);
    // Independent check: every point is contained in some line.
    std::uint64_t isolated = 0;
    for (const auto& pt : PointRange(f.field())) {
      if (oracle::slow_eval(f, pt.coords()) != 0) continue;
      const bool covered = std::any_of(lines.lines.begin(), lines.lines.end(),
                                       [&](const ProjLine& L) { return L.contains(f.field(), pt); });
      isolated += covered ? 0 : 1;
    }
    v.expect(points_off_lines(f, lines) == 0 && isolated == 0, "p=" + std::to_string(p));
    v.notes << " p=" << p << ":" << isolated;
  }
}

void ac4(Verdict& v) {
  for (auto [d, p] : {std::pair<std::uint32_t, std::uint64_t>{3, 13}, {5, 11}, {4, 17}}) {
    const auto f = build_family({FamilyName::fermat, p, d});
    const auto lines = lines_on_surface(f);
    const auto expected = fermat_expected_lines(d, f.field());
    std::size_t witnessed = 0;
    for (const auto& L : lines.lines) witnessed += transversality_along_line(f, L, 2).found_transversal_point ? 1 : 0;
    const std::string tag = "(d,p)=(" + std::to_string(d) + "," + std::to_string(p) + ")";
    v.expect(lines.m() == 3 * d * d, tag + " m");
    v.expect(std::set<ProjLine>(lines.lines.begin(), lines.lines.end()) ==
                 std::set<ProjLine>(expected.begin(), expected.end()),
             tag + " line set");
    v.expect(witnessed == lines.m(), tag + " witnesses");
    v.notes << " " << tag << ": m=" << lines.m() << " witnessed=" << witnessed;
  }
}

void ac5(Verdict& v) {
  const std::pair<std::uint64_t, std::uint64_t> table[] = {{11, 144}, {31, 1728}, {41, 5120}, {61, 14112}, {71, 21952}};
  for (auto [p, want] : table) {
    const auto f = build_family({FamilyName::quintic_type, p});
    const auto count = count_points_generic(f);
    const auto m = lines_on_surface(f).m();
    v.expect(count == want && m == 0, "p=" + std::to_string(p));
    v.notes << " p=" << p << ":" << count << "/m=" << m;
  }
}

void ac6(Verdict& v) {
  const auto primes = exceptional_primes(5, 5);
  std::vector<std::uint64_t> got;
  for (const auto& e : primes) got.push_back(e.prime);
  v.expect(got == std::vector<std::uint64_t>{11, 41, 61}, "exceptional primes");

  std::uint64_t checked = 0;
  for (std::uint64_t p = 11; p <= 625; p += 10) {
    if (!is_prime(p) || p == 11 || p == 41 || p == 61) continue;
    v.expect(verify_lemma41(p), "lemma at p=" + std::to_string(p));
    ++checked;
  }

  // The algebraic integers of the argument and their norms.
  v.expect(cyc_norm(CycInt(5, {2, 3})) == 55, "N(2+3z)");
  v.expect(cyc_norm(CycInt(5, {1, 4})) == 205, "N(1+4z)");
  v.expect(cyc_norm(CycInt(5, {3, 1})) == 61, "N(3+z)");
  v.expect(cyc_norm(CycInt(5, {1, 3})) == 61, "N(1+3z)");
  const std::map<std::uint64_t, Int128> want_norm = {{11, 55}, {41, 205}, {61, 61}};
  for (const auto& e : primes) {
    const bool seen = std::any_of(e.witnesses.begin(), e.witnesses.end(),
                                  [&](const NormWitness& w) { return w.norm == want_norm.at(e.prime); });
    v.expect(seen, "witness norm for " + std::to_string(e.prime));
  }

  const std::map<std::uint64_t, std::vector<std::vector<Residue>>> identities = {
      {11,
       {{1, 1, 3, 3, 3}, {1, 5, 5}, {1, 1, 1, 4, 4}, {1, 1, 9}, {1, 9, 4, 4, 4}, {1, 3, 9, 9}, {1, 1, 4, 5}, {3, 3, 5},
        {1, 3, 3, 4}, {1, 5, 9, 9, 9}}},
      {41, {{1, 10, 10, 10, 10}}},
      {61, {{20, 20, 20, 1}, {1, 1, 1, 58}}}};
  for (const auto& [p, list] : identities) {
    const auto sums = zero_sums_mod_p(5, p, 5);
    for (auto s : list) {
      std::sort(s.begin(), s.end());
      v.expect(std::find(sums.begin(), sums.end(), s) != sums.end(), "identity in F_" + std::to_string(p));
    }
  }
  v.notes << " primes={11,41,61} lemma checked at " << checked << " other primes";
}

void ac7(Verdict& v) {
  const auto scan = septic_scan_u23(300);
  std::vector<std::uint64_t> hits;
  for (const auto& [p, found] : scan)
    if (found) hits.push_back(p);
  v.expect(hits == std::vector<std::uint64_t>{29}, "scan hits");
  v.expect(cyc_norm(CycInt(7, {2, 1, 1})) == 29, "N(z^2+z+2)");
  const std::map<std::uint64_t, std::uint64_t> sharper = {{29, 18}, {43, 17}};
  for (std::uint64_t p : {29, 43, 71, 113}) {
    const std::uint64_t u = (p - 1) / 7;
    const auto count = count_points_generic(build_family({FamilyName::septic_type_F, p}));
    v.expect(count >= 12 * cube(u), "12u^3 at p=" + std::to_string(p));
    if (sharper.count(p)) v.expect(count >= sharper.at(p) * cube(u), "sharper bound at p=" + std::to_string(p));
    v.notes << " p=" << p << ":" << count;
  }
}

void ac8(Verdict& v) {
  for (std::uint64_t p : {11, 31, 41}) {
    const std::uint64_t u = (p - 1) / 5;
    const auto count = count_points_generic(build_family({FamilyName::g2_type_F2, p}));
    v.expect(count >= 24 * cube(u), "24u^3 at p=" + std::to_string(p));
    v.notes << " p=" << p << ":" << count;
    if (p == 31) {
      const auto diff = static_cast<std::int64_t>(count) - 6048;
      if (diff == 0) {
        v.notes << " (exact agreement with 28u^3 = 6048)";
      } else {
        v.notes << " (28u^3 = 6048, discrepancy " << diff << ")";
      }
    }
  }
}

void ac9(Verdict& v) {
  std::vector<FamilySpec> censuses;
  for (std::uint64_t p : {7, 11, 13, 19, 23}) censuses.push_back({FamilyName::half_fermat, p});
  censuses.push_back({FamilyName::fermat, 13, 3});
  censuses.push_back({FamilyName::fermat, 11, 5});
  censuses.push_back({FamilyName::fermat, 17, 4});
  for (std::uint64_t p : {11, 31, 41, 61, 71}) censuses.push_back({FamilyName::quintic_type, p});
  for (std::uint64_t p : {29, 43, 71, 113}) censuses.push_back({FamilyName::septic_type_F, p});
  for (std::uint64_t p : {11, 31, 41}) censuses.push_back({FamilyName::g2_type_F2, p});

  int compared = 0;
  for (const auto& spec : censuses) {
    const auto f = build_family(spec);
    const std::int64_t p = static_cast<std::int64_t>(spec.p), d = f.degree();
    if (!(2 < d && d < p)) continue;
    const auto lines = lines_on_surface(f);
    const bool all = std::all_of(lines.lines.begin(), lines.lines.end(), [&](const ProjLine& L) {
      return transversality_along_line(f, L, 2).found_transversal_point;
    });
    if (!all) continue;
    const auto count = count_points_generic(f);
    const auto b = evaluate_bounds(p, d, static_cast<std::int64_t>(lines.m()));
    const std::string tag = to_string(spec.name) + " p=" + std::to_string(p);
    v.expect(Rational(count) <= b.improved.value, tag + " improved");
    v.expect(Rational(count) <= b.felipe.value, tag + " felipe");
    ++compared;
  }
  v.expect(compared == static_cast<int>(censuses.size()), "every census qualified");

  std::uint64_t identities = 0;
  for (std::int64_t p = 2; p <= 997; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    for (std::int64_t d = 3; d <= 20; ++d)
      for (std::int64_t m = 0; m <= 200; ++m) {
        const auto b = evaluate_bounds(p, d, m);
        const Rational gap(3 * m * (d + p - 1) - m * (m + 1), 6);
        if (b.felipe.value - b.improved.value != gap) v.expect(false, "gap identity");
        ++identities;
      }
  }
  for (std::int64_t p : {11, 31, 41, 61, 71}) {
    const std::int64_t u = (p - 1) / 5;
    v.expect(evaluate_bounds(p, 2 * u, 0).felipe.value == Rational(28 * u * u * u), "28u^3 at p=" + std::to_string(p));
  }
  v.notes << " bounds compared on " << compared << " censuses; gap identity on " << identities << " triples";
}

std::vector<Monomial> all_cubic_terms(const PrimeField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> coeff(0, F.p() - 1);
  std::vector<Monomial> ms;
  for (std::uint32_t a = 0; a <= 3; ++a)
    for (std::uint32_t b = 0; a + b <= 3; ++b)
      for (std::uint32_t c = 0; a + b + c <= 3; ++c) ms.push_back({coeff(rng), {a, b, c, 3 - a - b - c}});
  return ms;
}

void ac10(Verdict& v) {
  std::mt19937_64 rng(20261015);
  for (std::uint64_t p : {5, 7, 11, 13}) {
    const PrimeField F(p);
    int smooth = 0, attempts = 0;
    std::set<std::int64_t> seen;
    while (smooth < 50) {
      if (++attempts > 5000) {
        v.expect(false, "not enough smooth cubics at p=" + std::to_string(p));
        break;
      }
      const auto f = HomogeneousForm::make(F, all_cubic_terms(F, rng));
      if (!f || f->degree() != 3) continue;
      if (!singular_points(*f, 1).none_found() || !singular_points(*f, 2).none_found()) continue;
      ++smooth;
      const auto N = static_cast<std::int64_t>(count_points_generic(*f));
      const std::int64_t q = static_cast<std::int64_t>(p);
      const std::int64_t rest = N - q * q - 1;
      const bool integral = rest % q == 0;
      const std::int64_t n = rest / q;
      seen.insert(n);
      v.expect(integral, "n integral at p=" + std::to_string(p));
      v.expect(-2 <= n && n <= 7 && n != 6, "n=" + std::to_string(n) + " at p=" + std::to_string(p));
      if (p == 5) v.expect(n <= 5, "n<=5 at p=5");
    }
    v.notes << " p=" << p << ": n in {";
    bool first = true;
    for (auto n : seen) {
      v.notes << (first ? "" : ",") << n;
      first = false;
    }
    v.notes << "}";
  }
}

void ac11(Verdict& v) {
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; p <= 61; ++p)
    if (is_prime(p)) primes.push_back(p);
  std::uniform_int_distribution<std::size_t> pick_p(0, primes.size() - 1);
  std::uniform_int_distribution<std::uint32_t> pick_d(1, 12);
  for (int i = 0; i < 100; ++i) {
    const PrimeField F(primes[pick_p(rng)]);
    const auto f = oracle::random_diagonal(F, pick_d(rng), rng);
    if (count_points_generic(f) != count_points_diagonal(f)) v.expect(false, to_string(f) + " over F_" + std::to_string(F.p()));
  }
  v.notes << " 100 diagonal surfaces";
}

void ac12(Verdict& v) {
  const PrimeField F(1009);
  const std::vector<Monomial> ms = {
      {1, {3, 2, 1, 0}}, {2, {0, 3, 2, 1}}, {3, {1, 0, 3, 2}}, {5, {2, 1, 0, 3}}, {7, {1, 1, 2, 2}}};
  const HomogeneousForm f(F, ms);
  auto t0 = std::chrono::steady_clock::now();
  const auto count = count_points_generic(f);
  const double generic = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const HomogeneousForm diag(F, std::vector<Monomial>{{1, {6, 0, 0, 0}}, {2, {0, 6, 0, 0}}, {3, {0, 0, 6, 0}}, {5, {0, 0, 0, 6}}});
  t0 = std::chrono::steady_clock::now();
  const auto dcount = count_points_diagonal(diag);
  const double fast = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  v.expect(generic < 120.0, "generic census under 120 s");
  v.expect(fast < 1.0, "diagonal fast path under 1 s");
  v.notes << " generic count=" << count << " in " << generic << " s (" << resolve_threads(0)
          << " workers); diagonal count=" << dcount << " in " << fast << " s";
}

}  // namespace

int main() {
  struct Entry {
    const char* id;
    const char* title;
    double limit_seconds;
    Criterion run;
  };
  const Entry entries[] = {
      {"AC1", "half-Fermat census", 5, ac1},
      {"AC2", "half-Fermat line statistics", 60, ac2},
      {"AC3", "no isolated points", 60, ac3},
      {"AC4", "Fermat lines", 60, ac4},
      {"AC5", "quintic-type counts", 10, ac5},
      {"AC6", "vanishing sums of fifth roots", 5, ac6},
      {"AC7", "septic scan", 30, ac7},
      {"AC8", "G2 surface", 5, ac8},
      {"AC9", "bound suite", 300, ac9},
      {"AC10", "smooth cubics", 300, ac10},
      {"AC11", "generic vs diagonal counters", 60, ac11},
      {"AC12", "performance", 240, ac12},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(v);
    } catch (const std::exception& ex) {
      v.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.expect(secs < e.limit_seconds, "runtime limit " + std::to_string(e.limit_seconds) + " s");
    failed += v.ok ? 0 : 1;
    std::cout << (v.ok ? "PASS " : "FAIL ") << e.id << " " << e.title << " (" << secs << " s)" << v.notes.str()
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
