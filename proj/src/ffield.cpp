#include "surfcensus/ffield.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace surfcensus {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

Residue PrimeField::reduce(std::int64_t v) const {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  return static_cast<Residue>(r < 0 ? r + m : r);
}

Residue PrimeField::pow(Residue base, std::uint64_t e) const { return powmod(base, e, p_); }

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return powmod(a, p_ - 2, p_);
}

std::vector<std::uint32_t> PrimeField::power_table(std::uint64_t e) const {
  if (p_ > 0xffffffffULL) throw std::invalid_argument("power tables require p < 2^32");
  std::vector<std::uint32_t> table(p_);
  for (std::uint64_t t = 0; t < p_; ++t) table[t] = static_cast<std::uint32_t>(pow(t, e));
  return table;
}

Residue PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  const auto factors = distinct_prime_factors(p_ - 1);
  for (Residue g = 2; g < p_; ++g) {
    bool generator = true;
    for (auto q : factors) {
      if (pow(g, (p_ - 1) / q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw std::logic_error("no primitive root found");
}

Residue PrimeField::least_nonresidue() const {
  if (p_ == 2) throw std::invalid_argument("F_2 has no quadratic non-residue");
  for (Residue n = 2; n < p_; ++n) {
    if (pow(n, (p_ - 1) / 2) == p_ - 1) return n;
  }
  throw std::logic_error("no quadratic non-residue found");
}

Residue primitive_root_of_unity(const PrimeField& field, std::uint64_t d) {
  const auto p = field.p();
  if (d == 0 || (p - 1) % d != 0) {
    throw std::invalid_argument(std::to_string(d) + " does not divide p-1 = " + std::to_string(p - 1));
  }
  return field.pow(field.primitive_root(), (p - 1) / d);
}

std::vector<Residue> roots_of_unity(const PrimeField& field, std::uint64_t d) {
  const Residue zeta = primitive_root_of_unity(field, d);
  std::vector<Residue> roots;
  roots.reserve(d);
  Residue r = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    roots.push_back(r);
    r = field.mul(r, zeta);
  }
  return roots;
}

bool is_dth_power(const PrimeField& field, Residue a, std::uint64_t d) {
  a %= field.p();
  if (a == 0) throw std::invalid_argument("is_dth_power: a must be nonzero");
  if (d == 0) throw std::invalid_argument("is_dth_power: d must be positive");
  const std::uint64_t g = gcd_u64(d, field.p() - 1);
  return field.pow(a, (field.p() - 1) / g) == 1;
}

// ---------------------------------------------------------------------------

ExtField2::ExtField2(const PrimeField& base) : base_(base), nonresidue_(base.least_nonresidue()) {}

Fp2 ExtField2::mul(Fp2 x, Fp2 y) const {
  const std::uint64_t p = base_.p();
  // p < 2^31 keeps a sum of two products below 2^64.
  if (p < (1ULL << 31)) {
    const std::uint64_t bb = x.b * y.b % p;
    return {(x.a * y.a + bb * nonresidue_) % p, (x.a * y.b % p + x.b * y.a % p) % p};
  }
  const Residue bb = base_.mul(x.b, y.b);
  return {base_.add(base_.mul(x.a, y.a), base_.mul(bb, nonresidue_)),
          base_.add(base_.mul(x.a, y.b), base_.mul(x.b, y.a))};
}

Fp2 ExtField2::pow(Fp2 x, std::uint64_t e) const {
  Fp2 r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Residue ExtField2::norm(Fp2 x) const {
  return base_.sub(base_.mul(x.a, x.a), base_.mul(nonresidue_, base_.mul(x.b, x.b)));
}

Fp2 ExtField2::inv(Fp2 x) const {
  if (x.is_zero()) throw std::domain_error("inverse of zero in F_{p^2}");
  return scale(base_.inv(norm(x)), conj(x));
}

}  // namespace surfcensus
