#pragma once

// Named surface families with their closed-form or lower-bound point counts,
// plus the scans that go with them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "surfcensus/ffield.hpp"
#include "surfcensus/polyform.hpp"
#include "surfcensus/surfacelines.hpp"

namespace surfcensus {

enum class FamilyName { fermat, half_fermat, quintic_type, septic_type_F, g2_type_F2, remark44 };

std::string to_string(FamilyName name);

/// Accepts the canonical names plus short aliases such as "half-fermat",
/// "quintic", "septic", "g2". Throws std::invalid_argument otherwise.
FamilyName parse_family_name(std::string_view text);

struct FamilySpec {
  FamilyName name = FamilyName::fermat;
  std::uint64_t p = 0;
  std::uint32_t d = 0;  // used by fermat and remark44 only

  /// Throws std::invalid_argument naming the violated congruence.
  void validate() const;
  /// The exponent u used by the family: (p-1)/2, (p-1)/5 or (p-1)/7; d for the others.
  std::uint64_t u() const;
};

/// The defining form over F_p:
///   fermat        x^d + y^d - z^d - w^d
///   half_fermat   x^u + y^u - z^u - w^u,                    u = (p-1)/2
///   quintic_type  x^2u + y^2u + x^u y^u + z^2u + w^2u,      u = (p-1)/5
///   septic_type_F G(x^u, y^u, z^u, w^u),                    u = (p-1)/7
///                 G = u0^2 + u0u1 + u1^2 + u0u2 + u2^2 + u2u3 + u3^2
///   g2_type_F2    sum_{i<=j} x_i^u x_j^u,                   u = (p-1)/5
///   remark44      x^2d + x^d y^d + y^2d + z^2d + w^2d
HomogeneousForm build_family(const FamilySpec& spec);

enum class CountKind { exact, lower_bound };

std::string to_string(CountKind kind);

struct ClosedFormCount {
  CountKind kind = CountKind::exact;
  std::uint64_t value = 0;
  bool from_exception_table = false;
};

/// Throws std::invalid_argument for families without a closed form
/// (fermat, remark44).
ClosedFormCount closed_form_count(const FamilySpec& spec);

/// Ordered-pair line statistics of the half-Fermat surface, u = (p-1)/2:
/// m = 3u^2, same = 3u^2(p-3), cross = 6u^3, total = 6u^2(p-2).
struct HalfFermatLineStats {
  std::uint64_t m = 0;
  std::uint64_t same_type_pairs = 0;
  std::uint64_t cross_type_pairs = 0;
  std::uint64_t total_pairs = 0;
};

HalfFermatLineStats half_fermat_line_stats(std::uint64_t p);

/// For each prime p = 1 mod 7 below p_max: whether some x, y in F_p satisfy
/// a^2 + ab + b^2 + 1 = 0 with a = x^u, b = y^u, u = (p-1)/7. Needs p_max <= 1000.
std::map<std::uint64_t, bool> septic_scan_u23(std::uint64_t p_max, unsigned threads = 0);

/// The lines y = omega x, z = lambda w on x^2d + x^d y^d + y^2d + z^2d + w^2d,
/// with omega^2d + omega^d + 1 = 0 and lambda^2d + 1 = 0.
struct Remark44Evidence {
  std::uint32_t d = 0;
  std::uint64_t p = 0;
  bool skipped = false;
  std::string skip_reason;
  int field_degree = 0;  // 1 if omega and lambda are both in F_p, else 2
  std::optional<Fp2> omega;
  std::optional<Fp2> lambda;
  std::uint32_t samples = 0;
  bool vanishes = false;
  std::optional<TransversalityEvidence> transversality;  // rational lines with 2d < p only
};

Remark44Evidence remark44_line_check(std::uint32_t d, std::uint64_t p);

/// Transversality scan for the line x0 = x2 = 0 on the cone x0^2 = x2 x3,
/// along which grad f and grad S1 stay proportional, so no witness exists.
TransversalityEvidence cone_line_contrast(std::uint64_t p);

}  // namespace surfcensus
