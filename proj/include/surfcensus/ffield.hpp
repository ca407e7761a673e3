#pragma once

// Prime field F_p and its quadratic extension F_{p^2}.

#include <cstdint>
#include <vector>

namespace surfcensus {

using Residue = std::uint64_t;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

class PrimeField {
 public:
  /// Throws std::invalid_argument if p is not prime.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }

  Residue reduce(std::int64_t v) const;
  Residue reduce_u(std::uint64_t v) const { return v % p_; }

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Residue pow(Residue base, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  Residue inv(Residue a) const;

  /// Table t -> t^e for t in [0, p). 0^0 is 1.
  std::vector<std::uint32_t> power_table(std::uint64_t e) const;

  /// Least generator of F_p^*.
  Residue primitive_root() const;

  /// Least element whose square is not a square; requires odd p.
  Residue least_nonresidue() const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

/// The d-th roots of unity in F_p, listed as successive powers 1, z, z^2, ...
/// of the primitive root z = g^((p-1)/d) with g the least primitive root.
/// Throws std::invalid_argument unless d divides p - 1.
std::vector<Residue> roots_of_unity(const PrimeField& field, std::uint64_t d);

/// A primitive d-th root of unity (the generator used by roots_of_unity).
Residue primitive_root_of_unity(const PrimeField& field, std::uint64_t d);

/// Whether a is in the image of x -> x^d on F_p^*. Throws on a == 0.
bool is_dth_power(const PrimeField& field, Residue a, std::uint64_t d);

// ---------------------------------------------------------------------------

/// a + b*theta with theta^2 = nonresidue.
struct Fp2 {
  Residue a = 0;
  Residue b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const Fp2&) const = default;
};

class ExtField2 {
 public:
  /// Requires an odd prime.
  explicit ExtField2(const PrimeField& base);

  const PrimeField& base() const { return base_; }
  std::uint64_t p() const { return base_.p(); }
  Residue nonresidue() const { return nonresidue_; }
  std::uint64_t size() const { return base_.p() * base_.p(); }

  Fp2 embed(Residue a) const { return {a, 0}; }
  Fp2 zero() const { return {0, 0}; }
  Fp2 one() const { return {1, 0}; }
  Fp2 theta() const { return {0, 1}; }

  Fp2 add(Fp2 x, Fp2 y) const { return {base_.add(x.a, y.a), base_.add(x.b, y.b)}; }
  Fp2 sub(Fp2 x, Fp2 y) const { return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)}; }
  Fp2 neg(Fp2 x) const { return {base_.neg(x.a), base_.neg(x.b)}; }
  Fp2 mul(Fp2 x, Fp2 y) const;
  Fp2 scale(Residue c, Fp2 x) const { return {base_.mul(c, x.a), base_.mul(c, x.b)}; }
  Fp2 pow(Fp2 x, std::uint64_t e) const;
  Fp2 inv(Fp2 x) const;
  Fp2 conj(Fp2 x) const { return {x.a, base_.neg(x.b)}; }
  /// x * conj(x) = a^2 - n b^2.
  Residue norm(Fp2 x) const;

  /// Element with index i in [0, p^2): a = i mod p, b = i / p.
  Fp2 element(std::uint64_t i) const { return {i % p(), i / p()}; }
  std::uint64_t index(Fp2 x) const { return x.a + x.b * p(); }

 private:
  PrimeField base_;
  Residue nonresidue_;
};

}  // namespace surfcensus
