#include "surfcensus/families.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

#include "surfcensus/parallel.hpp"
#include "surfcensus/rational.hpp"

namespace surfcensus {

std::string to_string(FamilyName name) {
  switch (name) {
    case FamilyName::fermat:
      return "fermat";
    case FamilyName::half_fermat:
      return "half_fermat";
    case FamilyName::quintic_type:
      return "quintic_type";
    case FamilyName::septic_type_F:
      return "septic_type_F";
    case FamilyName::g2_type_F2:
      return "g2_type_F2";
    case FamilyName::remark44:
      return "remark44";
  }
  return "unknown";
}

FamilyName parse_family_name(std::string_view text) {
  std::string key;
  for (char c : text) key += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "fermat") return FamilyName::fermat;
  if (key == "half_fermat") return FamilyName::half_fermat;
  if (key == "quintic" || key == "quintic_type") return FamilyName::quintic_type;
  if (key == "septic" || key == "septic_type" || key == "septic_type_f") return FamilyName::septic_type_F;
  if (key == "g2" || key == "g2_type" || key == "g2_type_f2") return FamilyName::g2_type_F2;
  if (key == "remark44") return FamilyName::remark44;
  throw std::invalid_argument("unknown family '" + std::string(text) +
                              "' (expected fermat, half-fermat, quintic, septic, g2 or remark44)");
}

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

void require_congruence(const FamilySpec& s, std::uint64_t modulus) {
  if ((s.p - 1) % modulus != 0) {
    throw std::invalid_argument(to_string(s.name) + " needs p = 1 mod " + std::to_string(modulus) + ", got p = " +
                                std::to_string(s.p));
  }
}

Exponents mono(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) { return {a, b, c, d}; }

// Count tables: value = (a3 u^3 + a2 u^2) for the listed primes, general row otherwise.
struct CubicRow {
  std::int64_t a3;
  std::int64_t a2;
};

struct CountTable {
  CountKind kind;
  CubicRow general;
  std::map<std::uint64_t, CubicRow> exceptions;
  std::map<std::uint64_t, CountKind> exception_kinds;
};

const CountTable& quintic_table() {
  static const CountTable t{CountKind::exact, {8, 0}, {{11, {18, 0}}, {41, {10, 0}}, {61, {8, 2}}}, {}};
  return t;
}

const CountTable& septic_table() {
  static const CountTable t{
      CountKind::lower_bound, {12, 0}, {{29, {18, 0}}, {43, {17, 0}}, {71, {16, 0}}, {239, {14, 0}}, {337, {14, 0}}}, {}};
  return t;
}

const CountTable& g2_table() {
  static const CountTable t{CountKind::lower_bound, {24, 0}, {{31, {28, 0}}}, {{31, CountKind::exact}}};
  return t;
}

ClosedFormCount from_table(const CountTable& table, std::uint64_t p, std::uint64_t u) {
  ClosedFormCount out;
  out.kind = table.kind;
  CubicRow row = table.general;
  if (auto it = table.exceptions.find(p); it != table.exceptions.end()) {
    row = it->second;
    out.from_exception_table = true;
    if (auto k = table.exception_kinds.find(p); k != table.exception_kinds.end()) out.kind = k->second;
  }
  const Int128 U = u;
  const Int128 v = checked_mul(checked_mul(checked_mul(row.a3, U), U), U) + checked_mul(checked_mul(row.a2, U), U);
  out.value = static_cast<std::uint64_t>(v);
  return out;
}

}  // namespace

void FamilySpec::validate() const {
  switch (name) {
    case FamilyName::fermat:
      require_prime(p);
      if (d < 1) throw std::invalid_argument("fermat needs d >= 1");
      require_congruence(*this, d);
      return;
    case FamilyName::half_fermat:
      require_prime(p);
      if (p == 2) throw std::invalid_argument("half_fermat needs odd p");
      if ((p - 1) / 2 <= 2) throw std::invalid_argument("half_fermat needs (p-1)/2 > 2, got p = " + std::to_string(p));
      return;
    case FamilyName::quintic_type:
    case FamilyName::g2_type_F2:
      require_prime(p);
      require_congruence(*this, 5);
      return;
    case FamilyName::septic_type_F:
      require_prime(p);
      require_congruence(*this, 7);
      return;
    case FamilyName::remark44:
      require_prime(p);
      if (d < 1) throw std::invalid_argument("remark44 needs d >= 1");
      return;
  }
}

std::uint64_t FamilySpec::u() const {
  switch (name) {
    case FamilyName::half_fermat:
      return (p - 1) / 2;
    case FamilyName::quintic_type:
    case FamilyName::g2_type_F2:
      return (p - 1) / 5;
    case FamilyName::septic_type_F:
      return (p - 1) / 7;
    default:
      return d;
  }
}

HomogeneousForm build_family(const FamilySpec& spec) {
  spec.validate();
  const PrimeField F(spec.p);
  const auto u = static_cast<std::uint32_t>(spec.u());
  std::vector<Term> terms;
  switch (spec.name) {
    case FamilyName::fermat:
    case FamilyName::half_fermat:
      terms = {{1, mono(u, 0, 0, 0)}, {1, mono(0, u, 0, 0)}, {-1, mono(0, 0, u, 0)}, {-1, mono(0, 0, 0, u)}};
      break;
    case FamilyName::quintic_type:
    case FamilyName::remark44:
      terms = {{1, mono(2 * u, 0, 0, 0)},
               {1, mono(0, 2 * u, 0, 0)},
               {1, mono(u, u, 0, 0)},
               {1, mono(0, 0, 2 * u, 0)},
               {1, mono(0, 0, 0, 2 * u)}};
      break;
    case FamilyName::septic_type_F:
      terms = {{1, mono(2 * u, 0, 0, 0)}, {1, mono(u, u, 0, 0)},     {1, mono(0, 2 * u, 0, 0)},
               {1, mono(u, 0, u, 0)},     {1, mono(0, 0, 2 * u, 0)}, {1, mono(0, 0, u, u)},
               {1, mono(0, 0, 0, 2 * u)}};
      break;
    case FamilyName::g2_type_F2:
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          Exponents e{};
          e[i] += u;
          e[j] += u;
          terms.push_back({1, e});
        }
      }
      break;
  }
  return HomogeneousForm(F, terms);
}

std::string to_string(CountKind kind) { return kind == CountKind::exact ? "exact" : "lower_bound"; }

ClosedFormCount closed_form_count(const FamilySpec& spec) {
  spec.validate();
  const std::uint64_t u = spec.u();
  switch (spec.name) {
    case FamilyName::half_fermat: {
      const Int128 P = spec.p;
      const Int128 num = 3 * (P * P * P - 3 * P * P + 11 * P - 9);
      if (num % 8 != 0) throw std::logic_error("half-Fermat count is not integral");
      return {CountKind::exact, static_cast<std::uint64_t>(num / 8), false};
    }
    case FamilyName::quintic_type:
      return from_table(quintic_table(), spec.p, u);
    case FamilyName::septic_type_F:
      return from_table(septic_table(), spec.p, u);
    case FamilyName::g2_type_F2:
      return from_table(g2_table(), spec.p, u);
    default:
      throw std::invalid_argument("no closed-form count for family " + to_string(spec.name));
  }
}

HalfFermatLineStats half_fermat_line_stats(std::uint64_t p) {
  if (p % 2 == 0 || (p - 1) / 2 <= 2) throw std::invalid_argument("half-Fermat line statistics need odd p with (p-1)/2 > 2");
  const std::uint64_t u = (p - 1) / 2;
  return {3 * u * u, 3 * u * u * (p - 3), 6 * u * u * u, 6 * u * u * (p - 2)};
}

std::map<std::uint64_t, bool> septic_scan_u23(std::uint64_t p_max, unsigned threads) {
  if (p_max > 1000) throw std::invalid_argument("septic scan is limited to p_max <= 1000");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 15; p < p_max; p += 14) {
    if (is_prime(p)) primes.push_back(p);
  }
  using Partial = std::vector<std::pair<std::uint64_t, bool>>;
  auto partial = parallel_reduce<Partial>(
      primes.size(), threads, {},
      [&](std::uint64_t begin, std::uint64_t end) {
        Partial out;
        for (std::uint64_t i = begin; i < end; ++i) {
          const std::uint64_t p = primes[i];
          const PrimeField F(p);
          const auto pw = F.power_table((p - 1) / 7);
          bool found = false;
          for (std::uint64_t x = 0; x < p && !found; ++x) {
            const Residue a = pw[x];
            for (std::uint64_t y = 0; y < p; ++y) {
              const Residue b = pw[y];
              if ((a * a + a * b + b * b + 1) % p == 0) {
                found = true;
                break;
              }
            }
          }
          out.emplace_back(p, found);
        }
        return out;
      },
      [](Partial a, Partial b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
  return {partial.begin(), partial.end()};
}

namespace {

// Roots of x^2d + c x^d + 1 = 0 (c in {0, 1}); F_p elements first, then F_{p^2}.
std::optional<Fp2> find_root(const ExtField2& ext, std::uint32_t d, Residue c) {
  auto is_root = [&](Fp2 x) {
    const Fp2 xd = ext.pow(x, d);
    const Fp2 v = ext.add(ext.add(ext.mul(xd, xd), ext.scale(c, xd)), ext.one());
    return v.is_zero();
  };
  for (std::uint64_t i = 1; i < ext.size(); ++i) {
    const Fp2 x = ext.element(i);
    if (is_root(x)) return x;
  }
  return std::nullopt;
}

}  // namespace

Remark44Evidence remark44_line_check(std::uint32_t d, std::uint64_t p) {
  Remark44Evidence ev;
  ev.d = d;
  ev.p = p;
  const FamilySpec spec{FamilyName::remark44, p, d};
  const HomogeneousForm f = build_family(spec);
  if (p == 2) {
    ev.skipped = true;
    ev.skip_reason = "quadratic extension needs odd p";
    return ev;
  }
  const PrimeField F(p);
  const ExtField2 ext(F);
  ev.omega = find_root(ext, d, 1);
  ev.lambda = find_root(ext, d, 0);
  if (!ev.omega || !ev.lambda) {
    ev.skipped = true;
    ev.skip_reason = "roots not in quadratic extension, skipped";
    return ev;
  }
  ev.field_degree = (ev.omega->b == 0 && ev.lambda->b == 0) ? 1 : 2;

  // Points (s, omega s, lambda t, t) for s = 1 and 2d values of t, then (0, 0, lambda, 1).
  ev.vanishes = true;
  for (std::uint32_t i = 0; i <= 2 * d; ++i) {
    const bool last = i == 2 * d;
    const Fp2 s = last ? ext.zero() : ext.one();
    const Fp2 t = last ? ext.one() : ext.element(i);
    const ExtCoords pt{s, ext.mul(*ev.omega, s), ext.mul(*ev.lambda, t), t};
    ++ev.samples;
    if (!evaluate(f, ext, pt).is_zero()) ev.vanishes = false;
  }

  if (ev.field_degree == 1 && 2 * std::uint64_t{d} < p) {
    const Residue om = ev.omega->a, la = ev.lambda->a;
    const ProjLine line = ProjLine::from_equations(F, {Coords{F.neg(om), 1, 0, 0}, Coords{0, 0, 1, F.neg(la)}});
    ev.transversality = transversality_along_line(f, line, 2);
  }
  return ev;
}

TransversalityEvidence cone_line_contrast(std::uint64_t p) {
  const PrimeField F(p);
  const std::vector<Term> terms{{1, mono(2, 0, 0, 0)}, {-1, mono(0, 0, 1, 1)}};
  const HomogeneousForm f(F, terms);
  const ProjLine line = ProjLine::from_equations(F, {Coords{1, 0, 0, 0}, Coords{0, 0, 1, 0}});
  return transversality_along_line(f, line, p > 2 ? 2 : 1);
}

}  // namespace surfcensus
