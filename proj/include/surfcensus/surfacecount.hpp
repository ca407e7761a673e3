#pragma once

// Exact rational-point counts for surfaces and for X = S ∩ S1 ∩ S2.

#include <cstdint>
#include <optional>
#include <span>

#include "surfcensus/polyform.hpp"
#include "surfcensus/surfacelines.hpp"

namespace surfcensus {

struct CountReport {
  std::uint64_t p = 0;
  std::uint32_t d = 0;
  std::uint64_t total = 0;
  // The rest need d < p and are absent otherwise.
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> on_lines;
  std::optional<std::uint64_t> off_lines;
  std::optional<std::uint64_t> x_total;
};

/// |{P in P^3(F_p) : f(P) = 0}| by exhaustive stratified enumeration.
/// Requires p < 2^20.
std::uint64_t count_points_generic(const HomogeneousForm& f, unsigned threads = 0);

/// Number of points where every form vanishes. Requires p < 2^20.
std::uint64_t count_common_zeros(std::span<const HomogeneousForm> forms, unsigned threads = 0);

/// Affine solutions in F_p^4 (origin included) of a diagonal form, by
/// convolving per-variable value histograms over Z/p.
/// Throws std::invalid_argument on non-diagonal forms.
std::uint64_t affine_count_diagonal(const HomogeneousForm& f);

/// (affine_count_diagonal(f) - 1) / (p - 1).
std::uint64_t count_points_diagonal(const HomogeneousForm& f);

/// |X(F_p)| with X = {f = 0} ∩ {twist_s1(f) = 0} ∩ {twist_s2(f) = 0}. Requires d < p.
std::uint64_t count_points_x(const HomogeneousForm& f, unsigned threads = 0);

/// Points of S lying on at least one of the given lines.
std::uint64_t points_on_lines(const HomogeneousForm& f, const LineConfiguration& lines);

/// Points of S lying on none of the given lines.
std::uint64_t points_off_lines(const HomogeneousForm& f, const LineConfiguration& lines, unsigned threads = 0);

/// Full report; the line and X fields are filled when d < p.
CountReport census(const HomogeneousForm& f, unsigned threads = 0);

}  // namespace surfcensus
