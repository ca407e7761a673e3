#pragma once

// Exact rationals over 128-bit integers, normalized with a positive denominator.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace surfcensus {

using Int128 = __int128;

/// Decimal representation of a 128-bit integer.
std::string to_string_i128(Int128 v);

/// Overflow-checked 128-bit arithmetic; throws std::overflow_error.
Int128 checked_add(Int128 a, Int128 b);
Int128 checked_mul(Int128 a, Int128 b);

class Rational {
 public:
  Rational() = default;
  Rational(Int128 n) : num_(n) {}  // NOLINT: integers convert implicitly
  Rational(Int128 n, Int128 d);

  Int128 num() const { return num_; }
  Int128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  /// Greatest integer <= value.
  Int128 floor() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  /// Exact comparison by cross-multiplication.
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "n" or "n/d".
  std::string str() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  Int128 num_ = 0;
  Int128 den_ = 1;
};

}  // namespace surfcensus
