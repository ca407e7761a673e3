#pragma once

// Z[zeta_d] arithmetic, field norms, and vanishing sums of roots of unity
// over Z[zeta_d] and over F_p.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "surfcensus/ffield.hpp"
#include "surfcensus/rational.hpp"

namespace surfcensus {

/// Integer polynomial, constant term first.
using IntPoly = std::vector<std::int64_t>;

std::uint32_t euler_phi(std::uint32_t n);

/// Phi_d, computed as (x^d - 1) divided by Phi_e for every proper divisor e.
IntPoly cyclotomic_polynomial(std::uint32_t d);

/// Element of Z[zeta_d] in the power basis 1, zeta, ..., zeta^(phi(d)-1).
class CycInt {
 public:
  /// Reduces an arbitrary polynomial in zeta modulo Phi_d.
  CycInt(std::uint32_t d, IntPoly poly);

  /// Sum of zeta^e over the given exponents.
  static CycInt sum_of_powers(std::uint32_t d, std::span<const std::uint32_t> exponents);

  std::uint32_t d() const { return d_; }
  const IntPoly& coeffs() const { return coeffs_; }
  bool is_zero() const;

  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  bool operator==(const CycInt&) const = default;

 private:
  std::uint32_t d_;
  IntPoly coeffs_;
};

/// N(a) = product of sigma_k(a) over k coprime to d, computed as the
/// resultant Res(Phi_d, a) by fraction-free elimination.
Int128 cyc_norm(const CycInt& a);

/// Multiset of roots of unity zeta^e (sorted exponents) plus zeros.
struct RootMultiset {
  std::uint32_t d = 0;
  std::vector<std::uint32_t> exponents;
  std::uint32_t zeros = 0;

  std::size_t size() const { return exponents.size() + zeros; }
  CycInt sum() const { return CycInt::sum_of_powers(d, exponents); }
  std::string str() const;
  auto operator<=>(const RootMultiset&) const = default;
};

/// All multisets of nonzero roots of size 1..k with smallest exponent list
/// among their rotations (multiplying every entry by one root is a unit
/// multiple of the sum, so norms are rotation invariant).
std::vector<RootMultiset> root_multisets_up_to_rotation(std::uint32_t d, std::uint32_t k);

struct NormWitness {
  RootMultiset multiset;
  Int128 norm;
};

struct ExceptionalPrime {
  std::uint64_t prime;
  std::vector<NormWitness> witnesses;  // sorted by norm
};

/// Primes p = residue mod d dividing the norm of some nonzero sum of at most
/// k roots of unity. Every nonzero norm is at most k^phi(d), so the search is
/// complete.
std::vector<ExceptionalPrime> exceptional_primes(std::uint32_t d, std::uint32_t k, std::uint32_t residue = 1);

/// Multisets (sorted residues) of 1..k d-th roots of unity in F_p summing to 0.
/// Throws std::invalid_argument unless p = 1 mod d.
std::vector<std::vector<Residue>> zero_sums_mod_p(std::uint32_t d, std::uint64_t p, std::uint32_t k);

/// Whether the only vanishing sum of at most five 5th roots of unity in F_p is
/// the sum of all five. Throws unless p = 1 mod 5.
bool verify_lemma41(std::uint64_t p);

}  // namespace surfcensus
