#include "surfcensus/bounds.hpp"

#include <stdexcept>

namespace surfcensus {

std::string to_string(Applicability a) {
  switch (a) {
    case Applicability::holds:
      return "holds";
    case Applicability::violated:
      return "violated";
    case Applicability::unverified:
      return "unverified";
  }
  return "unknown";
}

namespace {

// d(d+p-1)(d+2p-2)/6
Rational main_term(Int128 p, Int128 d) { return Rational(checked_mul(checked_mul(d, d + p - 1), d + 2 * p - 2), 6); }

Applicability from_evidence(std::optional<bool> e) {
  if (!e) return Applicability::unverified;
  return *e ? Applicability::holds : Applicability::violated;
}

Applicability both(Applicability a, Applicability b) {
  if (a == Applicability::violated || b == Applicability::violated) return Applicability::violated;
  if (a == Applicability::unverified || b == Applicability::unverified) return Applicability::unverified;
  return Applicability::holds;
}

}  // namespace

Int128 bauer_rams_cap(std::int64_t d) {
  const Int128 D = d;
  return 11 * D * D - 30 * D + 18;
}

Rational improvement_threshold(std::int64_t d) {
  const Int128 D = d;
  return Rational(11 * D * D - 33 * D + 22, 3);
}

Rational improvement_gap(std::int64_t p, std::int64_t d, std::int64_t m) {
  const Int128 M = m;
  return Rational(checked_mul(3 * M, Int128{d} + p - 1) - checked_mul(M, M + 1), 6);
}

bool count_within(std::uint64_t count, const Rational& bound) { return Rational(Int128{count}) <= bound; }

BoundReport evaluate_bounds(std::int64_t p, std::int64_t d, std::optional<std::int64_t> m,
                            const BoundEvidence& evidence) {
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (m && *m < 0) throw std::invalid_argument("line count must be non-negative");

  BoundReport r;
  r.p = p;
  r.d = d;
  r.line_cap = bauer_rams_cap(d);
  r.m_assumed = !m.has_value();
  r.m = m ? *m : static_cast<std::int64_t>(r.line_cap > 0 ? r.line_cap : 0);
  r.regime = 2 < d && d < p;

  const Int128 P = p, D = d, M = r.m;
  const Rational base = main_term(P, D);

  r.deligne.value = P * P + 1 + checked_mul(D * D * D - 4 * D * D + 6 * D - 2, P);
  r.voloch_square.value = (D - 1) * (P + 1) * (P + 1) + P + 1;
  r.voloch_noline.value = (D - 1) * P * P + (D - 2) * (P + 1) + 1;
  r.felipe.value = base + checked_mul(M, P + 1);
  r.felipe_plus.value = base + checked_mul(D * (11 * D - 24), P + 1);
  r.improved.value = r.felipe.value - improvement_gap(p, d, r.m);
  r.improved_no_m.value = base + Rational(checked_mul(r.line_cap, 11 * D * D - 33 * D + 28 + 3 * P), 6);

  const Applicability smooth = from_evidence(evidence.smooth);
  const Applicability regime = r.regime ? Applicability::holds : Applicability::violated;
  const Applicability transversal = from_evidence(evidence.lines_transversal);
  const Applicability m_known = r.m_assumed ? Applicability::unverified : Applicability::holds;

  r.deligne.applicability = smooth;
  r.voloch_square.applicability = smooth;
  r.voloch_noline.applicability =
      both(smooth, r.m_assumed ? Applicability::unverified : (r.m == 0 ? Applicability::holds : Applicability::violated));
  r.felipe.applicability = both(both(smooth, regime), m_known);
  r.felipe_plus.applicability = both(smooth, regime);
  r.improved.applicability = both(r.felipe.applicability, transversal);
  r.improved_no_m.applicability = both(both(smooth, regime), transversal);
  return r;
}

}  // namespace surfcensus
