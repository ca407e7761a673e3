#pragma once

// Intersection arithmetic on a smooth surface S of degree d in P^3 cut by two
// further surfaces of degrees d1, d2 that share the lines L_1..L_m with S.
// With H a hyperplane section: H^2 = d, L.H = 1, L^2 = 2 - d.

#include <cstdint>

#include "surfcensus/rational.hpp"

namespace surfcensus {

struct DegreeTriple {
  Int128 d = 0;
  Int128 d1 = 0;
  Int128 d2 = 0;

  /// (d, d + p - 1, d + 2p - 2): the degrees of S and its two twists.
  static DegreeTriple from_twist(std::int64_t d, std::int64_t p);
};

/// L^2 = 2 - d for a line on a smooth degree-d surface.
Int128 line_self_intersection(std::int64_t d);

/// deg Gamma = d d1 d2 - m (d + d1 + d2) + 2m + sum_{i != j} L_i.L_j.
/// Throws std::invalid_argument for negative m, negative or odd pair_sum.
Int128 deg_gamma(const DegreeTriple& t, std::int64_t m, std::int64_t pair_sum);

/// The same quantity before expansion:
/// d1 d2 H^2 - (d1 + d2) m (L.H) + m L^2 + pair_sum.
Int128 deg_gamma_unexpanded(const DegreeTriple& t, std::int64_t m, std::int64_t pair_sum);

/// 2m <= deg Gamma - (d d1 d2 - m (d + d1 + d2)) <= m (m + 1).
bool lemma1_check(const DegreeTriple& t, std::int64_t m, Int128 deg_gamma_value);

}  // namespace surfcensus
