#pragma once

// Upper bounds on #S(F_p) for a smooth degree-d surface S in P^3 with m
// rational lines, kept as exact rationals.

#include <cstdint>
#include <optional>
#include <string>

#include "surfcensus/rational.hpp"

namespace surfcensus {

/// Whether a bound's hypotheses are met for the surface at hand.
enum class Applicability { holds, violated, unverified };

std::string to_string(Applicability a);

/// Upstream evidence about the surface; absent means not examined.
struct BoundEvidence {
  std::optional<bool> smooth;             // no singular points found
  std::optional<bool> lines_transversal;  // every rational line has a witness
};

struct BoundEntry {
  Rational value;
  Applicability applicability = Applicability::unverified;
};

struct BoundReport {
  std::int64_t p = 0;
  std::int64_t d = 0;
  std::int64_t m = 0;
  bool m_assumed = false;  // m was absent and set to the line cap
  bool regime = false;     // 2 < d < p

  BoundEntry deligne;        // p^2 + 1 + (d^3 - 4d^2 + 6d - 2) p
  BoundEntry voloch_square;  // (d-1)(p+1)^2 + p + 1
  BoundEntry voloch_noline;  // (d-1)p^2 + (d-2)(p+1) + 1, surfaces without rational lines
  BoundEntry felipe;         // d(d+p-1)(d+2p-2)/6 + m(p+1)
  BoundEntry felipe_plus;    // d(d+p-1)(d+2p-2)/6 + d(11d-24)(p+1)
  BoundEntry improved;       // felipe - (3m(d+p-1) - m(m+1))/6
  BoundEntry improved_no_m;  // d(d+p-1)(d+2p-2)/6 + (11d^2-30d+18)(11d^2-33d+28+3p)/6
  Int128 line_cap = 0;       // 11d^2 - 30d + 18

  std::optional<std::uint64_t> actual_count;
};

/// Throws std::invalid_argument for d < 1, p < 2 or m < 0. An absent m is
/// replaced by the line cap (0 when the cap is negative, i.e. d = 1).
BoundReport evaluate_bounds(std::int64_t p, std::int64_t d, std::optional<std::int64_t> m,
                            const BoundEvidence& evidence = {});

/// 11d^2 - 30d + 18, the maximal number of lines on a smooth degree-d surface
/// in characteristic 0 or p > d.
Int128 bauer_rams_cap(std::int64_t d);

/// (11d^2 - 33d + 22)/3: for p beyond it the improved bound beats the older
/// one for every admissible m.
Rational improvement_threshold(std::int64_t d);

/// felipe - improved = (3m(d+p-1) - m(m+1))/6.
Rational improvement_gap(std::int64_t p, std::int64_t d, std::int64_t m);

/// count <= bound, exactly.
bool count_within(std::uint64_t count, const Rational& bound);

}  // namespace surfcensus
