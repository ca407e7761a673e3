#include "surfcensus/surfacelines.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "surfcensus/parallel.hpp"

namespace surfcensus {

LineConfiguration LineConfiguration::from_lines(const PrimeField& field, std::vector<ProjLine> lines) {
  LineConfiguration cfg;
  cfg.lines = std::move(lines);
  const std::size_t m = cfg.lines.size();
  cfg.incidence.assign(m, std::vector<std::uint8_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto meet = static_cast<std::uint8_t>(lines_meet(field, cfg.lines[i], cfg.lines[j]));
      cfg.incidence[i][j] = cfg.incidence[j][i] = meet;
    }
  }
  return cfg;
}

namespace {

void require_degree_below_p(const HomogeneousForm& f) {
  if (f.degree() >= f.p()) {
    throw std::invalid_argument("line search requires degree d < p (d=" + std::to_string(f.degree()) +
                                ", p=" + std::to_string(f.p()) + ")");
  }
}

// Checks row0 + t*row1 for t = 1..d-1; the caller has already checked the rows.
bool interior_points_vanish(const FormEvaluator& eval, const PrimeField& F, const Coords& r0, const Coords& r1,
                            std::uint32_t d) {
  for (Residue t = 1; t + 1 <= d; ++t) {
    Coords c{};
    for (int i = 0; i < 4; ++i) c[i] = F.add(r0[i], F.mul(t, r1[i]));
    if (eval(c) != 0) return false;
  }
  return true;
}

// All vectors with a 1 at `pivot`, arbitrary entries at `free_cols`, zero elsewhere.
std::vector<Coords> echelon_rows(std::uint64_t p, int pivot, const std::vector<int>& free_cols) {
  std::vector<Coords> out;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < free_cols.size(); ++k) total *= p;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Coords c{0, 0, 0, 0};
    c[pivot] = 1;
    std::uint64_t rest = idx;
    for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) {
      c[*it] = rest % p;
      rest /= p;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

bool line_on_surface(const HomogeneousForm& f, const ProjLine& line) {
  require_degree_below_p(f);
  const FormEvaluator eval(f);
  const auto& r = line.rows();
  return eval(r[0]) == 0 && eval(r[1]) == 0 && interior_points_vanish(eval, f.field(), r[0], r[1], f.degree());
}

LineConfiguration lines_on_surface(const HomogeneousForm& f, unsigned threads) {
  require_degree_below_p(f);
  const auto& F = f.field();
  const std::uint64_t p = F.p();
  const FormEvaluator eval(f);
  const auto on_surface = [&](const Coords& c) { return eval(c) == 0; };

  // A line in RREF with pivots (c1, c2) has both rows on S; filter each row set first.
  std::vector<ProjLine> found;
  for (int c1 = 0; c1 < 4; ++c1) {
    for (int c2 = c1 + 1; c2 < 4; ++c2) {
      std::vector<int> free0, free1;
      for (int j = c1 + 1; j < 4; ++j) {
        if (j != c2) free0.push_back(j);
      }
      for (int j = c2 + 1; j < 4; ++j) free1.push_back(j);

      std::vector<Coords> rows0, rows1;
      for (const auto& c : echelon_rows(p, c1, free0)) {
        if (on_surface(c)) rows0.push_back(c);
      }
      for (const auto& c : echelon_rows(p, c2, free1)) {
        if (on_surface(c)) rows1.push_back(c);
      }
      if (rows0.empty() || rows1.empty()) continue;

      auto block = parallel_reduce<std::vector<ProjLine>>(
          rows0.size(), threads, {},
          [&](std::uint64_t begin, std::uint64_t end) {
            std::vector<ProjLine> local;
            for (auto i = begin; i < end; ++i) {
              for (const auto& r1 : rows1) {
                if (interior_points_vanish(eval, F, rows0[i], r1, f.degree())) {
                  local.push_back(ProjLine::from_rows(F, {rows0[i], r1}));
                }
              }
            }
            return local;
          },
          [](std::vector<ProjLine> a, std::vector<ProjLine> b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
          });
      found.insert(found.end(), block.begin(), block.end());
    }
  }
  std::sort(found.begin(), found.end());
  return LineConfiguration::from_lines(F, std::move(found));
}

std::vector<ProjLine> lines_on_surface_exhaustive(const HomogeneousForm& f) {
  require_degree_below_p(f);
  const auto& F = f.field();
  const FormEvaluator eval(f);
  std::vector<ProjLine> out;
  for (const auto line : LineRange(F)) {
    const auto pts = line.points(F);
    if (std::all_of(pts.begin(), pts.end(), [&](const ProjPoint& pt) { return eval(pt.coords()) == 0; })) {
      out.push_back(line);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjLine> fermat_expected_lines(std::uint32_t d, const PrimeField& field) {
  const std::uint64_t p = field.p();
  if (d == 0 || (p - 1) % d != 0) {
    throw std::invalid_argument("Fermat lines need p = 1 mod d (d=" + std::to_string(d) + ", p=" + std::to_string(p) +
                                ")");
  }
  if (!is_dth_power(field, p - 1, d)) {
    throw std::invalid_argument("-1 is not a " + std::to_string(d) + "-th power mod " + std::to_string(p));
  }
  Residue v = 1;
  while (field.pow(v, d) != p - 1) ++v;
  const auto eta = roots_of_unity(field, d);  // eta[i] = eta^i

  std::set<ProjLine> lines;
  const Residue minus_one = p - 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t k = 0; k < d; ++k) {
      const Residue ei = eta[i], ek = eta[k], eki = eta[(i + k) % d];
      lines.insert(ProjLine::from_equations(field, {Coords{ei, 0, 0, minus_one}, Coords{0, 1, field.neg(ek), 0}}));
      lines.insert(ProjLine::from_equations(field, {Coords{1, 0, field.neg(eki), 0}, Coords{0, ei, 0, minus_one}}));
      lines.insert(ProjLine::from_equations(
          field, {Coords{1, field.neg(field.mul(v, ei)), 0, 0}, Coords{0, 0, field.mul(v, ek), minus_one}}));
    }
  }
  return {lines.begin(), lines.end()};
}

namespace {

template <typename T, typename Zero, typename Sub, typename Mul>
bool rank_two(const std::array<T, 4>& u, const std::array<T, 4>& v, Zero is_zero, Sub sub, Mul mul) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!is_zero(sub(mul(u[i], v[j]), mul(u[j], v[i])))) return true;
    }
  }
  return false;
}

}  // namespace

TransversalityEvidence transversality_along_line(const HomogeneousForm& f, const ProjLine& line, int ext_degree) {
  if (ext_degree != 1 && ext_degree != 2) throw std::invalid_argument("ext_degree must be 1 or 2");
  const auto& F = f.field();
  const FormEvaluator eval(f);
  for (const auto& pt : line.points(F)) {
    if (eval(pt.coords()) != 0) throw std::invalid_argument("transversality_along_line: line does not lie on S");
  }

  std::array<std::optional<HomogeneousForm>, 4> grad_f, grad_s1;
  const auto s1 = twist_s1(f);
  for (int i = 0; i < 4; ++i) {
    grad_f[i] = partial_derivative(f, i);
    if (s1) grad_s1[i] = partial_derivative(*s1, i);
  }

  TransversalityEvidence ev;
  ev.ext_degree = ext_degree;

  for (const auto& pt : line.points(F)) {
    ++ev.points_scanned;
    Coords u{}, w{};
    for (int i = 0; i < 4; ++i) {
      u[i] = grad_f[i] ? evaluate(*grad_f[i], pt.coords()) : 0;
      w[i] = grad_s1[i] ? evaluate(*grad_s1[i], pt.coords()) : 0;
    }
    if (rank_two(
            u, w, [](Residue x) { return x == 0; }, [&](Residue a, Residue b) { return F.sub(a, b); },
            [&](Residue a, Residue b) { return F.mul(a, b); })) {
      ev.found_transversal_point = true;
      ExtCoords c{};
      for (int i = 0; i < 4; ++i) c[i] = Fp2{pt[i], 0};
      ev.witness = ExtProjPoint{c};
      return ev;
    }
  }
  if (ext_degree == 1) return ev;

  const ExtField2 ext(F);
  const auto& r = line.rows();
  // Points row0 + t*row1 with t in F_{p^2} \ F_p; index i >= p means b != 0.
  for (std::uint64_t idx = F.p(); idx < ext.size(); ++idx) {
    ++ev.points_scanned;
    const Fp2 t = ext.element(idx);
    ExtCoords c{};
    for (int i = 0; i < 4; ++i) c[i] = ext.add(ext.embed(r[0][i]), ext.scale(r[1][i], t));
    ExtCoords u{}, w{};
    for (int i = 0; i < 4; ++i) {
      u[i] = grad_f[i] ? evaluate(*grad_f[i], ext, c) : ext.zero();
      w[i] = grad_s1[i] ? evaluate(*grad_s1[i], ext, c) : ext.zero();
    }
    if (rank_two(
            u, w, [](Fp2 x) { return x.is_zero(); }, [&](Fp2 a, Fp2 b) { return ext.sub(a, b); },
            [&](Fp2 a, Fp2 b) { return ext.mul(a, b); })) {
      ev.found_transversal_point = true;
      ev.witness = normalize(ext, c);
      return ev;
    }
  }
  return ev;
}

std::int64_t pairwise_intersection_sum(const LineConfiguration& cfg) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < cfg.m(); ++i) {
    for (std::size_t j = 0; j < cfg.m(); ++j) {
      if (i != j) sum += cfg.incidence[i][j];
    }
  }
  return sum;
}

}  // namespace surfcensus
