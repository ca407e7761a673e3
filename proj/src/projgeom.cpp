#include "surfcensus/projgeom.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace surfcensus {

namespace {

Coords canonical_coords(const PrimeField& field, Coords c) {
  for (auto& v : c) v %= field.p();
  int lead = 0;
  while (lead < 4 && c[lead] == 0) ++lead;
  if (lead == 4) throw std::invalid_argument("the zero vector is not a projective point");
  const Residue inv = field.inv(c[lead]);
  for (int i = lead; i < 4; ++i) c[i] = field.mul(c[i], inv);
  return c;
}

Coords coords_from_index(std::uint64_t p, std::uint64_t index) {
  const std::uint64_t p2 = p * p;
  const std::uint64_t p3 = p2 * p;
  if (index < p3) return {1, index / p2, index / p % p, index % p};
  index -= p3;
  if (index < p2) return {0, 1, index / p, index % p};
  index -= p2;
  if (index < p) return {0, 0, 1, index};
  index -= p;
  if (index == 0) return {0, 0, 0, 1};
  throw std::out_of_range("point index out of range");
}

// Reduced row-echelon form in place; returns the rank.
int rref(const PrimeField& F, std::vector<Coords>& rows) {
  int rank = 0;
  const int n = static_cast<int>(rows.size());
  for (int col = 0; col < 4 && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[r][col] % F.p() != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const Residue inv = F.inv(rows[rank][col] % F.p());
    for (auto& v : rows[rank]) v = F.mul(v % F.p(), inv);
    for (int r = 0; r < n; ++r) {
      if (r == rank || rows[r][col] % F.p() == 0) continue;
      const Residue factor = rows[r][col] % F.p();
      for (int c = 0; c < 4; ++c) rows[r][c] = F.sub(rows[r][c] % F.p(), F.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

struct PivotBlock {
  int c1, c2;
  std::vector<std::pair<int, int>> free;  // (row, col), most significant first
};

const std::array<PivotBlock, 6>& pivot_blocks() {
  static const std::array<PivotBlock, 6> blocks = [] {
    std::array<PivotBlock, 6> out;
    int k = 0;
    for (int c1 = 0; c1 < 4; ++c1) {
      for (int c2 = c1 + 1; c2 < 4; ++c2) {
        PivotBlock b{c1, c2, {}};
        for (int j = c1 + 1; j < 4; ++j) {
          if (j != c2) b.free.emplace_back(0, j);
        }
        for (int j = c2 + 1; j < 4; ++j) b.free.emplace_back(1, j);
        out[k++] = b;
      }
    }
    return out;
  }();
  return blocks;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

ProjPoint::ProjPoint(const PrimeField& field, Coords coords) : coords_(canonical_coords(field, coords)) {}

std::uint64_t ProjPoint::index(std::uint64_t p) const {
  const auto& c = coords_;
  const std::uint64_t p2 = p * p;
  const std::uint64_t p3 = p2 * p;
  if (c[0] == 1) return c[1] * p2 + c[2] * p + c[3];
  if (c[1] == 1) return p3 + c[2] * p + c[3];
  if (c[2] == 1) return p3 + p2 + c[3];
  return p3 + p2 + p;
}

ProjPoint ProjPoint::from_index(const PrimeField& field, std::uint64_t index) {
  return ProjPoint(Canonical{}, coords_from_index(field.p(), index));
}

std::uint64_t point_count(std::uint64_t p) { return p * p * p + p * p + p + 1; }

std::uint64_t line_count(std::uint64_t p) { return (p * p + 1) * (p * p + p + 1); }

PointRange::iterator::iterator(std::uint64_t p, std::uint64_t index) : p_(p), index_(index) {
  if (index_ < point_count(p_)) point_ = ProjPoint(ProjPoint::Canonical{}, coords_from_index(p_, index_));
}

PointRange::iterator& PointRange::iterator::operator++() {
  ++index_;
  if (index_ < point_count(p_)) point_ = ProjPoint(ProjPoint::Canonical{}, coords_from_index(p_, index_));
  return *this;
}

// ---------------------------------------------------------------------------

int rank_mod_p(const PrimeField& field, std::vector<Coords> rows) { return rref(field, rows); }

ProjLine ProjLine::from_rows(const PrimeField& field, const Rows& rows) {
  std::vector<Coords> m{rows[0], rows[1]};
  if (rref(field, m) != 2) throw std::invalid_argument("line needs two independent rows");
  return ProjLine(Rows{m[0], m[1]});
}

ProjLine ProjLine::through(const PrimeField& field, const ProjPoint& a, const ProjPoint& b) {
  return from_rows(field, Rows{a.coords(), b.coords()});
}

ProjLine ProjLine::from_equations(const PrimeField& field, const Rows& equations) {
  std::vector<Coords> m{equations[0], equations[1]};
  if (rref(field, m) != 2) throw std::invalid_argument("line needs two independent equations");
  std::array<int, 2> piv{};
  for (int r = 0; r < 2; ++r) {
    piv[r] = static_cast<int>(std::find_if(m[r].begin(), m[r].end(), [](Residue v) { return v != 0; }) -
                              m[r].begin());
  }
  Rows basis{};
  int k = 0;
  for (int col = 0; col < 4; ++col) {
    if (col == piv[0] || col == piv[1]) continue;
    Coords v{0, 0, 0, 0};
    v[col] = 1;
    for (int r = 0; r < 2; ++r) v[piv[r]] = field.neg(m[r][col]);
    basis[k++] = v;
  }
  return from_rows(field, basis);
}

ProjLine ProjLine::from_index(const PrimeField& field, std::uint64_t index) {
  const std::uint64_t p = field.p();
  for (const auto& block : pivot_blocks()) {
    const std::uint64_t size = ipow(p, block.free.size());
    if (index >= size) {
      index -= size;
      continue;
    }
    Rows rows{};
    rows[0][block.c1] = 1;
    rows[1][block.c2] = 1;
    for (auto it = block.free.rbegin(); it != block.free.rend(); ++it) {
      rows[it->first][it->second] = index % p;
      index /= p;
    }
    return ProjLine(rows);
  }
  throw std::out_of_range("line index out of range");
}

std::array<int, 2> ProjLine::pivots() const {
  std::array<int, 2> piv{};
  for (int r = 0; r < 2; ++r) {
    piv[r] = static_cast<int>(std::find_if(rows_[r].begin(), rows_[r].end(), [](Residue v) { return v != 0; }) -
                              rows_[r].begin());
  }
  return piv;
}

ProjPoint ProjLine::point_at(const PrimeField& field, std::optional<Residue> t) const {
  if (!t) return ProjPoint(field, rows_[1]);
  Coords c{};
  for (int i = 0; i < 4; ++i) c[i] = field.add(rows_[0][i], field.mul(*t, rows_[1][i]));
  return ProjPoint(field, c);
}

std::vector<ProjPoint> ProjLine::points(const PrimeField& field) const {
  std::vector<ProjPoint> out;
  out.reserve(field.p() + 1);
  for (Residue t = 0; t < field.p(); ++t) out.push_back(point_at(field, t));
  out.push_back(point_at(field, std::nullopt));
  return out;
}

bool ProjLine::contains(const PrimeField& field, const ProjPoint& pt) const {
  return rank_mod_p(field, {rows_[0], rows_[1], pt.coords()}) == 2;
}

int lines_meet(const PrimeField& field, const ProjLine& l1, const ProjLine& l2) {
  if (l1 == l2) throw std::invalid_argument("lines_meet needs two distinct lines");
  return rank_mod_p(field, {l1.rows()[0], l1.rows()[1], l2.rows()[0], l2.rows()[1]}) < 4 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Singular points

ExtProjPoint normalize(const ExtField2& ext, ExtCoords c) {
  int lead = 0;
  while (lead < 4 && c[lead].is_zero()) ++lead;
  if (lead == 4) throw std::invalid_argument("the zero vector is not a projective point");
  const Fp2 inv = ext.inv(c[lead]);
  for (int i = lead; i < 4; ++i) c[i] = ext.mul(c[i], inv);
  return {c};
}

namespace {

std::vector<HomogeneousForm> singular_system(const HomogeneousForm& f) {
  std::vector<HomogeneousForm> forms;
  for (int i = 0; i < 4; ++i) {
    if (auto d = partial_derivative(f, i)) forms.push_back(*d);
  }
  forms.push_back(f);
  return forms;
}

// A form split by the exponent of x3: f = sum_k A_k(x0, x1, x2) x3^{e_k}.
struct ExtSliceForm {
  struct Group {
    std::uint32_t exp3;
    std::vector<Monomial> prefix;  // exps[3] ignored
    std::vector<Fp2> power3;       // c^{exp3} for every c in F_{p^2}, by index
  };
  std::vector<Group> groups;

  ExtSliceForm(const HomogeneousForm& f, const ExtField2& ext) {
    std::map<std::uint32_t, std::vector<Monomial>> by_exp;
    for (const auto& m : f.monomials()) by_exp[m.exps[3]].push_back(m);
    for (auto& [e, ms] : by_exp) {
      Group g{e, std::move(ms), {}};
      g.power3.resize(ext.size());
      for (std::uint64_t i = 0; i < ext.size(); ++i) g.power3[i] = ext.pow(ext.element(i), e);
      groups.push_back(std::move(g));
    }
  }

  std::vector<Fp2> slice(const ExtField2& ext, Fp2 x0, Fp2 x1, Fp2 x2) const {
    std::vector<Fp2> coeffs;
    coeffs.reserve(groups.size());
    for (const auto& g : groups) {
      Fp2 acc = ext.zero();
      for (const auto& m : g.prefix) {
        Fp2 v = ext.embed(m.coeff);
        if (m.exps[0]) v = ext.mul(v, ext.pow(x0, m.exps[0]));
        if (m.exps[1]) v = ext.mul(v, ext.pow(x1, m.exps[1]));
        if (m.exps[2]) v = ext.mul(v, ext.pow(x2, m.exps[2]));
        acc = ext.add(acc, v);
      }
      coeffs.push_back(acc);
    }
    return coeffs;
  }
};

void singular_over_ext2(const std::vector<HomogeneousForm>& forms, const ExtField2& ext,
                        std::vector<ExtProjPoint>& out) {
  const ExtSliceForm lead(forms.front(), ext);
  const std::uint64_t q = ext.size();

  auto all_vanish = [&](const ExtCoords& pt) {
    for (std::size_t k = 1; k < forms.size(); ++k) {
      if (!evaluate(forms[k], ext, pt).is_zero()) return false;
    }
    return true;
  };
  auto scan_slice = [&](Fp2 x0, Fp2 x1, Fp2 x2) {
    const auto coeffs = lead.slice(ext, x0, x1, x2);
    for (std::uint64_t c = 0; c < q; ++c) {
      Fp2 acc = ext.zero();
      for (std::size_t k = 0; k < coeffs.size(); ++k) acc = ext.add(acc, ext.mul(coeffs[k], lead.groups[k].power3[c]));
      if (!acc.is_zero()) continue;
      const ExtCoords pt{x0, x1, x2, ext.element(c)};
      if (all_vanish(pt)) out.push_back({pt});
    }
  };

  const Fp2 zero = ext.zero(), one = ext.one();
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) scan_slice(one, ext.element(a), ext.element(b));
  }
  for (std::uint64_t b = 0; b < q; ++b) scan_slice(zero, one, ext.element(b));
  scan_slice(zero, zero, one);
  const ExtCoords last{zero, zero, zero, one};
  if (evaluate(forms.front(), ext, last).is_zero() && all_vanish(last)) out.push_back({last});
}

}  // namespace

SingularPoints singular_points(const HomogeneousForm& f, int ext_degree) {
  if (ext_degree != 1 && ext_degree != 2) throw std::invalid_argument("ext_degree must be 1 or 2");
  const auto forms = singular_system(f);
  const auto& F = f.field();
  SingularPoints result;
  result.ext_degree = ext_degree;

  std::vector<FormEvaluator> evals;
  for (const auto& g : forms) evals.emplace_back(g);
  for (const auto& pt : PointRange(F)) {
    if (std::all_of(evals.begin(), evals.end(), [&](const FormEvaluator& e) { return e(pt.coords()) == 0; })) {
      result.rational.push_back(pt);
    }
  }
  if (ext_degree == 2) {
    const ExtField2 ext(F);
    singular_over_ext2(forms, ext, result.quadratic);
  }
  return result;
}

}  // namespace surfcensus
