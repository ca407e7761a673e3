#pragma once

// Rational lines on a surface, the Fermat line families, and transversality
// witnesses for the multiplicity of a line in S ∩ S1.

#include <cstdint>
#include <optional>
#include <vector>

#include "surfcensus/polyform.hpp"
#include "surfcensus/projgeom.hpp"

namespace surfcensus {

/// Lines with their pairwise intersection numbers (0/1, zero diagonal).
struct LineConfiguration {
  std::vector<ProjLine> lines;
  std::vector<std::vector<std::uint8_t>> incidence;

  std::size_t m() const { return lines.size(); }

  static LineConfiguration from_lines(const PrimeField& field, std::vector<ProjLine> lines);
};

/// Whether f vanishes on all of L, decided from d + 1 points. Requires d < p.
bool line_on_surface(const HomogeneousForm& f, const ProjLine& line);

/// Every rational line contained in {f = 0}, sorted. Requires d < p.
LineConfiguration lines_on_surface(const HomogeneousForm& f, unsigned threads = 0);

/// Same set by testing every line of P^3(F_p); O(p^4), for cross-checks.
std::vector<ProjLine> lines_on_surface_exhaustive(const HomogeneousForm& f);

/// The 3d^2 lines of x^d + y^d - z^d - w^d built from a primitive d-th root
/// of unity eta and v with v^d = -1, sorted and deduplicated:
///   w = eta^i x,      y = eta^k z
///   x = eta^(k+i) z,  w = eta^i y
///   x = v eta^i y,    w = v eta^k z
/// Throws std::invalid_argument if d does not divide p - 1 or -1 is not a d-th power.
std::vector<ProjLine> fermat_expected_lines(std::uint32_t d, const PrimeField& field);

struct TransversalityEvidence {
  bool found_transversal_point = false;
  std::optional<ExtProjPoint> witness;
  std::uint64_t points_scanned = 0;
  int ext_degree = 1;
};

/// Scans points of L (rational first, then F_{p^2} points when ext_degree is 2)
/// for one where grad f and grad S1 are independent. A witness certifies that L
/// has multiplicity one in S ∩ S1; no witness is inconclusive.
/// Throws std::invalid_argument if L does not lie on S.
TransversalityEvidence transversality_along_line(const HomogeneousForm& f, const ProjLine& line, int ext_degree);

/// Sum of L_i . L_j over ordered pairs i != j.
std::int64_t pairwise_intersection_sum(const LineConfiguration& cfg);

}  // namespace surfcensus
