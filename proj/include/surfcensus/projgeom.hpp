#pragma once

// Points and lines of P^3(F_p) in canonical form.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <vector>

#include "surfcensus/ffield.hpp"
#include "surfcensus/polyform.hpp"

namespace surfcensus {

/// Representative with first nonzero coordinate equal to 1.
class ProjPoint {
 public:
  /// Throws std::invalid_argument on the zero vector.
  ProjPoint(const PrimeField& field, Coords coords);

  const Coords& coords() const { return coords_; }
  Residue operator[](int i) const { return coords_[i]; }

  /// Dense index in [0, p^3 + p^2 + p + 1), following enumeration order.
  std::uint64_t index(std::uint64_t p) const;
  static ProjPoint from_index(const PrimeField& field, std::uint64_t index);

  auto operator<=>(const ProjPoint&) const = default;

 private:
  struct Canonical {};
  ProjPoint(Canonical, Coords c) : coords_(c) {}
  friend class PointRange;
  Coords coords_;
};

std::uint64_t point_count(std::uint64_t p);
std::uint64_t line_count(std::uint64_t p);

/// All points of P^3(F_p) by stratum: (1,*,*,*), (0,1,*,*), (0,0,1,*), (0,0,0,1).
class PointRange {
 public:
  explicit PointRange(const PrimeField& field) : p_(field.p()) {}

  class iterator {
   public:
    using value_type = ProjPoint;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::uint64_t p, std::uint64_t index);

    const ProjPoint& operator*() const { return point_; }
    const ProjPoint* operator->() const { return &point_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    std::uint64_t p_ = 0;
    std::uint64_t index_ = 0;
    ProjPoint point_{ProjPoint::Canonical{}, {0, 0, 0, 1}};
  };

  iterator begin() const { return {p_, 0}; }
  iterator end() const { return {p_, point_count(p_)}; }
  std::uint64_t size() const { return point_count(p_); }

 private:
  std::uint64_t p_;
};

/// A line as the row space of a 2x4 matrix in reduced row-echelon form.
class ProjLine {
 public:
  using Rows = std::array<Coords, 2>;

  /// Throws std::invalid_argument if the rows do not have rank 2.
  static ProjLine from_rows(const PrimeField& field, const Rows& rows);
  static ProjLine through(const PrimeField& field, const ProjPoint& a, const ProjPoint& b);
  /// The line cut out by two independent linear equations.
  static ProjLine from_equations(const PrimeField& field, const Rows& equations);
  /// Dense index in [0, line_count(p)), following enumeration order.
  static ProjLine from_index(const PrimeField& field, std::uint64_t index);

  const Rows& rows() const { return rows_; }
  std::array<int, 2> pivots() const;

  /// The p + 1 points s*row0 + t*row1 for (s:t) in P^1: t = 0..p-1 with s = 1, then (0:1).
  std::vector<ProjPoint> points(const PrimeField& field) const;
  /// The point row0 + t*row1, or row1 when t is absent.
  ProjPoint point_at(const PrimeField& field, std::optional<Residue> t) const;
  bool contains(const PrimeField& field, const ProjPoint& pt) const;

  auto operator<=>(const ProjLine&) const = default;

 private:
  explicit ProjLine(const Rows& rows) : rows_(rows) {}
  Rows rows_;
};

/// All lines of P^3(F_p), each once, ordered by pivot pair then free entries.
class LineRange {
 public:
  explicit LineRange(const PrimeField& field) : field_(field) {}

  class iterator {
   public:
    using value_type = ProjLine;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const PrimeField* field, std::uint64_t index) : field_(field), index_(index) {}
    ProjLine operator*() const { return ProjLine::from_index(*field_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const PrimeField* field_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {&field_, 0}; }
  iterator end() const { return {&field_, line_count(field_.p())}; }
  std::uint64_t size() const { return line_count(field_.p()); }

 private:
  PrimeField field_;
};

/// Rank of a small matrix over F_p (Gaussian elimination on a copy).
int rank_mod_p(const PrimeField& field, std::vector<Coords> rows);

/// Intersection number of two distinct lines: 1 if they meet, else 0.
/// Throws std::invalid_argument when l1 == l2.
int lines_meet(const PrimeField& field, const ProjLine& l1, const ProjLine& l2);

/// Point over F_{p^2}, first nonzero coordinate equal to 1.
struct ExtProjPoint {
  ExtCoords coords;
  bool is_rational() const {
    return coords[0].b == 0 && coords[1].b == 0 && coords[2].b == 0 && coords[3].b == 0;
  }
  bool operator==(const ExtProjPoint&) const = default;
};

ExtProjPoint normalize(const ExtField2& ext, ExtCoords coords);

struct SingularPoints {
  int ext_degree = 1;
  std::vector<ProjPoint> rational;
  /// All singular points over F_{p^2} (rational ones included); only when ext_degree == 2.
  std::vector<ExtProjPoint> quadratic;

  bool none_found() const { return rational.empty() && quadratic.empty(); }
};

/// Points where f and its four partials vanish, over F_p or F_{p^2}.
SingularPoints singular_points(const HomogeneousForm& f, int ext_degree = 1);

}  // namespace surfcensus
