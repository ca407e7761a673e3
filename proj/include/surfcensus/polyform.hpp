#pragma once

// Sparse homogeneous forms in x0..x3 over F_p, and the Frobenius twists
//   S1 = sum_i  (df/dx_i) x_i^p
//   S2 = sum_ij (d^2 f/dx_i dx_j) x_i^p x_j^p

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfcensus/ffield.hpp"

namespace surfcensus {

using Exponents = std::array<std::uint32_t, 4>;
using Coords = std::array<Residue, 4>;
using ExtCoords = std::array<Fp2, 4>;

struct Monomial {
  Residue coeff = 0;
  Exponents exps{};

  std::uint32_t degree() const { return exps[0] + exps[1] + exps[2] + exps[3]; }
  bool operator==(const Monomial&) const = default;
};

/// Input term for building forms: integer coefficient, reduced mod p on construction.
struct Term {
  std::int64_t coeff;
  Exponents exps;
};

class HomogeneousForm {
 public:
  /// Merges like terms and drops zero coefficients. Throws std::invalid_argument
  /// if the result is zero or the terms have different total degrees.
  HomogeneousForm(const PrimeField& field, std::vector<Monomial> monomials);
  HomogeneousForm(const PrimeField& field, std::span<const Term> terms);

  /// As the constructor, but a zero result yields std::nullopt.
  static std::optional<HomogeneousForm> make(const PrimeField& field, std::vector<Monomial> monomials);

  const PrimeField& field() const { return field_; }
  std::uint64_t p() const { return field_.p(); }
  std::uint32_t degree() const { return degree_; }
  /// Sorted by exponent quadruple, descending lexicographic.
  std::span<const Monomial> monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }

  /// Every monomial is a pure power of one variable.
  bool is_diagonal() const;

  /// Sorted list of distinct exponents appearing for any variable.
  std::vector<std::uint32_t> distinct_exponents() const;

  bool operator==(const HomogeneousForm& other) const {
    return field_ == other.field_ && monomials_ == other.monomials_;
  }

 private:
  PrimeField field_;
  std::uint32_t degree_ = 0;
  std::vector<Monomial> monomials_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: sum of terms `[+|-] [c*] x0^a0 * x1^a1 * ...`; `*` optional,
/// whitespace ignored, variables x0..x3 or x,y,z,w, coefficients reduced mod p.
/// A `#` starts a comment running to end of line.
HomogeneousForm parse_form(std::string_view text, const PrimeField& field);

/// Canonical text; parse_form(to_string(f)) == f.
std::string to_string(const HomogeneousForm& f);

Residue evaluate(const HomogeneousForm& f, const Coords& point);
Fp2 evaluate(const HomogeneousForm& f, const ExtField2& ext, const ExtCoords& point);

/// std::nullopt stands for the zero polynomial.
std::optional<HomogeneousForm> partial_derivative(const HomogeneousForm& f, int var);

/// Sum_i (df/dx_i) x_i^p, degree d + p - 1. Throws if d >= p.
std::optional<HomogeneousForm> twist_s1(const HomogeneousForm& f);

/// Sum over ordered pairs (i, j) of (d^2 f/dx_i dx_j) x_i^p x_j^p, degree
/// d + 2p - 2. Throws if d >= p.
std::optional<HomogeneousForm> twist_s2(const HomogeneousForm& f);

/// Variable substitution x_i -> x_perm[i].
HomogeneousForm permute_variables(const HomogeneousForm& f, const std::array<int, 4>& perm);
HomogeneousForm scale(const HomogeneousForm& f, Residue c);

/// Evaluation through per-exponent power tables; 4 lookups per monomial.
class FormEvaluator {
 public:
  explicit FormEvaluator(const HomogeneousForm& f);

  Residue operator()(const Coords& x) const;
  Residue operator()(Residue x0, Residue x1, Residue x2, Residue x3) const {
    return (*this)(Coords{x0, x1, x2, x3});
  }
  std::uint64_t p() const { return p_; }

 private:
  struct Entry {
    std::uint64_t coeff;
    std::array<std::uint32_t, 4> table;
  };
  std::uint64_t p_;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::vector<Entry> entries_;
};

}  // namespace surfcensus
