#include "surfcensus/divisor.hpp"

#include <stdexcept>

namespace surfcensus {

DegreeTriple DegreeTriple::from_twist(std::int64_t d, std::int64_t p) {
  if (d < 1 || p < 2) throw std::invalid_argument("degree triple needs d >= 1 and p >= 2");
  return {d, Int128{d} + p - 1, Int128{d} + 2 * Int128{p} - 2};
}

Int128 line_self_intersection(std::int64_t d) { return 2 - Int128{d}; }

Int128 deg_gamma(const DegreeTriple& t, std::int64_t m, std::int64_t pair_sum) {
  if (m < 0) throw std::invalid_argument("line count must be non-negative");
  if (pair_sum < 0 || pair_sum % 2 != 0) {
    throw std::invalid_argument("pairwise intersection sum over ordered pairs must be even and non-negative");
  }
  const Int128 ddd = checked_mul(checked_mul(t.d, t.d1), t.d2);
  const Int128 lines = checked_mul(m, t.d + t.d1 + t.d2);
  return ddd - lines + 2 * Int128{m} + pair_sum;
}

Int128 deg_gamma_unexpanded(const DegreeTriple& t, std::int64_t m, std::int64_t pair_sum) {
  const Int128 h_squared = t.d;
  const Int128 line_dot_h = 1;
  const Int128 line_squared = line_self_intersection(static_cast<std::int64_t>(t.d));
  return checked_mul(checked_mul(t.d1, t.d2), h_squared) - checked_mul(t.d1 + t.d2, m * line_dot_h) +
         m * line_squared + pair_sum;
}

bool lemma1_check(const DegreeTriple& t, std::int64_t m, Int128 deg_gamma_value) {
  const Int128 middle = deg_gamma_value - (checked_mul(checked_mul(t.d, t.d1), t.d2) - checked_mul(m, t.d + t.d1 + t.d2));
  return 2 * Int128{m} <= middle && middle <= checked_mul(m, Int128{m} + 1);
}

}  // namespace surfcensus
