#include "surfcensus/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace surfcensus {

namespace {

std::int64_t add64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Z[zeta] coefficient overflow");
  return r;
}

std::int64_t mul64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Z[zeta] coefficient overflow");
  return r;
}

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by a monic polynomial.
IntPoly rem_monic(IntPoly a, const IntPoly& monic) {
  const std::size_t n = monic.size() - 1;
  for (std::size_t deg = a.size(); deg-- > n;) {
    const std::int64_t c = a[deg];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) a[deg - n + j] = add64(a[deg - n + j], -mul64(c, monic[j]));
  }
  a.resize(std::min(a.size(), n));
  a.resize(n, 0);
  return a;
}

// Exact quotient of a by a monic polynomial.
IntPoly div_monic(IntPoly a, const IntPoly& monic) {
  const std::size_t n = monic.size() - 1;
  if (a.size() <= n) return {};
  IntPoly q(a.size() - n, 0);
  for (std::size_t deg = a.size(); deg-- > n;) {
    const std::int64_t c = a[deg];
    q[deg - n] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) a[deg - n + j] = add64(a[deg - n + j], -mul64(c, monic[j]));
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("inexact cyclotomic division");
  return q;
}

// Determinant by Bareiss fraction-free elimination.
Int128 determinant(std::vector<std::vector<Int128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (checked_mul(m[i][j], m[k][k]) - checked_mul(m[i][k], m[k][j])) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Res(f, g) = lc(f)^deg(g) * prod g(roots of f), via the Sylvester matrix.
Int128 resultant(const IntPoly& f, IntPoly g) {
  trim(g);
  if (g.empty()) return 0;
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  if (n == 0) {
    Int128 r = 1;
    for (std::size_t i = 0; i < m; ++i) r = checked_mul(r, g[0]);
    const Int128 lead = f.back();
    return lead == 1 ? r : throw std::invalid_argument("resultant expects monic f");
  }
  const std::size_t size = m + n;
  std::vector<std::vector<Int128>> syl(size, std::vector<Int128>(size, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j <= m; ++j) syl[r][r + j] = f[m - j];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j <= n; ++j) syl[n + r][r + j] = g[n - j];
  }
  return determinant(std::move(syl));
}

}  // namespace

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic_polynomial(std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("cyclotomic polynomial index must be positive");
  IntPoly num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (std::uint32_t e = 1; e < d; ++e) {
    if (d % e == 0) num = div_monic(num, cyclotomic_polynomial(e));
  }
  return num;
}

CycInt::CycInt(std::uint32_t d, IntPoly poly) : d_(d) {
  if (d == 0) throw std::invalid_argument("root order must be positive");
  coeffs_ = rem_monic(std::move(poly), cyclotomic_polynomial(d));
}

CycInt CycInt::sum_of_powers(std::uint32_t d, std::span<const std::uint32_t> exponents) {
  IntPoly poly(d, 0);
  for (auto e : exponents) ++poly[e % d];
  return CycInt(d, std::move(poly));
}

bool CycInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("CycInt operands of different root orders");
  IntPoly s(a.coeffs_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = add64(a.coeffs_[i], b.coeffs_[i]);
  return CycInt(a.d_, std::move(s));
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("CycInt operands of different root orders");
  IntPoly prod(a.coeffs_.size() + b.coeffs_.size(), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] = add64(prod[i + j], mul64(a.coeffs_[i], b.coeffs_[j]));
  }
  return CycInt(a.d_, std::move(prod));
}

Int128 cyc_norm(const CycInt& a) { return resultant(cyclotomic_polynomial(a.d()), a.coeffs()); }

std::string RootMultiset::str() const {
  std::string s = "{";
  bool first = true;
  for (std::uint32_t i = 0; i < zeros; ++i) {
    s += first ? "0" : ", 0";
    first = false;
  }
  for (auto e : exponents) {
    if (!first) s += ", ";
    first = false;
    s += e == 0 ? "1" : e == 1 ? "z" : "z^" + std::to_string(e);
  }
  return s + "}";
}

namespace {

// Non-decreasing sequences over [0, n) of every length 1..k.
void for_each_multiset(std::uint32_t n, std::uint32_t k, const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t start) {
    if (!cur.empty()) fn(cur);
    if (cur.size() == k) return;
    for (std::uint32_t v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<std::uint64_t> prime_factors(unsigned __int128 n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; static_cast<unsigned __int128>(q) * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint64_t>(n));
  return out;
}

}  // namespace

std::vector<RootMultiset> root_multisets_up_to_rotation(std::uint32_t d, std::uint32_t k) {
  std::vector<RootMultiset> out;
  for_each_multiset(d, k, [&](const std::vector<std::uint32_t>& exps) {
    for (std::uint32_t r = 1; r < d; ++r) {
      std::vector<std::uint32_t> rotated(exps.size());
      std::transform(exps.begin(), exps.end(), rotated.begin(), [&](std::uint32_t e) { return (e + r) % d; });
      std::sort(rotated.begin(), rotated.end());
      if (rotated < exps) return;
    }
    out.push_back({d, exps, 0});
  });
  return out;
}

std::vector<ExceptionalPrime> exceptional_primes(std::uint32_t d, std::uint32_t k, std::uint32_t residue) {
  if (d < 2 || k < 1) throw std::invalid_argument("exceptional_primes needs d >= 2 and k >= 1");
  std::map<std::uint64_t, std::vector<NormWitness>> found;
  for (const auto& ms : root_multisets_up_to_rotation(d, k)) {
    const CycInt s = ms.sum();
    if (s.is_zero()) continue;
    const Int128 norm = cyc_norm(s);
    const auto magnitude = static_cast<unsigned __int128>(norm < 0 ? -norm : norm);
    for (auto q : prime_factors(magnitude)) {
      if (q % d == residue % d) found[q].push_back({ms, norm});
    }
  }
  std::vector<ExceptionalPrime> out;
  for (auto& [q, witnesses] : found) {
    std::stable_sort(witnesses.begin(), witnesses.end(),
                     [](const NormWitness& a, const NormWitness& b) { return a.norm < b.norm; });
    out.push_back({q, std::move(witnesses)});
  }
  return out;
}

std::vector<std::vector<Residue>> zero_sums_mod_p(std::uint32_t d, std::uint64_t p, std::uint32_t k) {
  const PrimeField F(p);
  if ((p - 1) % d != 0) {
    throw std::invalid_argument("zero_sums_mod_p needs p = 1 mod d (d=" + std::to_string(d) +
                                ", p=" + std::to_string(p) + ")");
  }
  const auto roots = roots_of_unity(F, d);
  std::vector<std::vector<Residue>> out;
  for_each_multiset(d, k, [&](const std::vector<std::uint32_t>& idx) {
    Residue s = 0;
    for (auto i : idx) s = F.add(s, roots[i]);
    if (s != 0) return;
    std::vector<Residue> values(idx.size());
    std::transform(idx.begin(), idx.end(), values.begin(), [&](std::uint32_t i) { return roots[i]; });
    std::sort(values.begin(), values.end());
    out.push_back(std::move(values));
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_lemma41(std::uint64_t p) {
  const auto sums = zero_sums_mod_p(5, p, 5);
  auto full = roots_of_unity(PrimeField(p), 5);
  std::sort(full.begin(), full.end());
  return sums.size() == 1 && sums.front() == full;
}

}  // namespace surfcensus
