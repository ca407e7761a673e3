#include "surfcensus/surfacecount.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "surfcensus/parallel.hpp"

namespace surfcensus {

namespace {

constexpr std::uint64_t kMaxCountingPrime = 1u << 20;

void require_counting_range(std::uint64_t p) {
  if (p >= kMaxCountingPrime) {
    throw std::invalid_argument("exhaustive counting supports p < 2^20 (p=" + std::to_string(p) + ")");
  }
}

using Table = std::vector<std::uint32_t>;

// A form written as sum_k A_k(x0, x1, x2) * x3^{e_k}, with power tables for
// every exponent it uses.
class SlicedForm {
 public:
  struct Prefix {
    std::uint64_t coeff;
    const std::uint32_t* t0;
    const std::uint32_t* t1;
    const std::uint32_t* t2;
  };
  struct Group {
    std::uint32_t exp3;
    const std::uint32_t* t3;
    std::vector<Prefix> prefixes;
  };

  SlicedForm(const HomogeneousForm& f, std::map<std::uint32_t, Table>& tables) : p_(f.p()) {
    for (auto e : f.distinct_exponents()) {
      if (!tables.count(e)) tables.emplace(e, f.field().power_table(e));
    }
    std::map<std::uint32_t, std::vector<Prefix>> by_exp;
    for (const auto& m : f.monomials()) {
      by_exp[m.exps[3]].push_back(
          {m.coeff, tables.at(m.exps[0]).data(), tables.at(m.exps[1]).data(), tables.at(m.exps[2]).data()});
    }
    for (auto& [e, prefixes] : by_exp) groups_.push_back({e, tables.at(e).data(), std::move(prefixes)});
  }

  std::size_t group_count() const { return groups_.size(); }
  const Group& group(std::size_t k) const { return groups_[k]; }

  void slice(std::uint64_t x0, std::uint64_t x1, std::uint64_t x2, std::uint64_t* out) const {
    for (std::size_t k = 0; k < groups_.size(); ++k) {
      std::uint64_t acc = 0;
      for (const auto& m : groups_[k].prefixes) {
        std::uint64_t v = m.coeff * m.t0[x0] % p_;
        v = v * m.t1[x1] % p_;
        v = v * m.t2[x2] % p_;
        acc += v;
      }
      out[k] = acc % p_;
    }
  }

  // Each product is below p^2 < 2^40, so up to 2^24 groups sum without overflow.
  std::uint64_t value(const std::uint64_t* coeffs, std::uint64_t x3) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < groups_.size(); ++k) acc += coeffs[k] * groups_[k].t3[x3];
    return acc % p_;
  }

 private:
  std::uint64_t p_;
  std::vector<Group> groups_;
};

// Slices (x0, x1, x2) covering P^3 minus (0:0:0:1): p^2 + p + 1 of them.
inline void slice_prefix(std::uint64_t p, std::uint64_t s, std::uint64_t& x0, std::uint64_t& x1,
                         std::uint64_t& x2) {
  const std::uint64_t p2 = p * p;
  if (s < p2) {
    x0 = 1, x1 = s / p, x2 = s % p;
  } else if (s < p2 + p) {
    x0 = 0, x1 = 1, x2 = s - p2;
  } else {
    x0 = 0, x1 = 0, x2 = 1;
  }
}

// Variable whose exponents take the fewest distinct values, moved to x3.
HomogeneousForm with_best_inner_variable(const HomogeneousForm& f) {
  int best = 3;
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  for (int v = 3; v >= 0; --v) {
    std::vector<std::uint32_t> es;
    for (const auto& m : f.monomials()) es.push_back(m.exps[v]);
    std::sort(es.begin(), es.end());
    const auto distinct = static_cast<std::size_t>(std::unique(es.begin(), es.end()) - es.begin());
    if (distinct < best_count) {
      best_count = distinct;
      best = v;
    }
  }
  if (best == 3) return f;
  std::array<int, 4> perm{0, 1, 2, 3};
  std::swap(perm[best], perm[3]);
  return permute_variables(f, perm);
}

std::uint64_t count_single(const HomogeneousForm& f_in, unsigned threads) {
  const HomogeneousForm f = with_best_inner_variable(f_in);
  const auto& F = f.field();
  const std::uint64_t p = F.p();
  std::map<std::uint32_t, Table> tables;
  const SlicedForm sliced(f, tables);
  const std::size_t K = sliced.group_count();

  // With x3 in at most one positive exponent e, each slice reduces to
  // counting solutions of t^e = v, read from a histogram of e-th powers.
  const bool has_constant = sliced.group(0).exp3 == 0;
  const std::size_t positive = K - (has_constant ? 1 : 0);
  std::vector<std::uint32_t> hist, inverse;
  if (positive == 1) {
    const auto* t3 = sliced.group(K - 1).t3;
    hist.assign(p, 0);
    for (std::uint64_t t = 0; t < p; ++t) ++hist[t3[t]];
    inverse.assign(p, 0);
    for (std::uint64_t a = 1; a < p; ++a) inverse[a] = static_cast<std::uint32_t>(F.inv(a));
  }

  const std::uint64_t slices = p * p + p + 1;
  std::uint64_t total = parallel_sum(slices, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> coeffs(K);
    std::uint64_t count = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      std::uint64_t x0, x1, x2;
      slice_prefix(p, s, x0, x1, x2);
      sliced.slice(x0, x1, x2, coeffs.data());
      if (positive == 0) {
        if (coeffs[0] == 0) count += p;
      } else if (positive == 1) {
        const std::uint64_t a0 = has_constant ? coeffs[0] : 0;
        const std::uint64_t a1 = coeffs[K - 1];
        if (a1 == 0) {
          if (a0 == 0) count += p;
        } else {
          // a1 * t^e = -a0
          count += hist[(p - a0) % p * inverse[a1] % p];
        }
      } else {
        const auto* t3 = sliced.group(0).t3;
        if (K == 2) {
          const auto* u3 = sliced.group(1).t3;
          const std::uint64_t a = coeffs[0], b = coeffs[1];
          for (std::uint64_t t = 0; t < p; ++t) count += (a * t3[t] + b * u3[t]) % p == 0;
        } else if (K == 3) {
          const auto* u3 = sliced.group(1).t3;
          const auto* v3 = sliced.group(2).t3;
          const std::uint64_t a = coeffs[0], b = coeffs[1], c = coeffs[2];
          for (std::uint64_t t = 0; t < p; ++t) count += (a * t3[t] + b * u3[t] + c * v3[t]) % p == 0;
        } else {
          for (std::uint64_t t = 0; t < p; ++t) count += sliced.value(coeffs.data(), t) == 0;
        }
      }
    }
    return count;
  });
  if (evaluate(f, Coords{0, 0, 0, 1}) == 0) ++total;
  return total;
}

std::uint64_t count_multi(std::span<const HomogeneousForm> forms, unsigned threads) {
  const std::uint64_t p = forms.front().p();
  std::map<std::uint32_t, Table> tables;
  std::vector<SlicedForm> sliced;
  for (const auto& f : forms) sliced.emplace_back(f, tables);

  const std::uint64_t slices = p * p + p + 1;
  std::uint64_t total = parallel_sum(slices, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::vector<std::uint64_t>> coeffs(sliced.size());
    for (std::size_t i = 0; i < sliced.size(); ++i) coeffs[i].resize(sliced[i].group_count());
    std::uint64_t count = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      std::uint64_t x0, x1, x2;
      slice_prefix(p, s, x0, x1, x2);
      for (std::size_t i = 0; i < sliced.size(); ++i) sliced[i].slice(x0, x1, x2, coeffs[i].data());
      for (std::uint64_t t = 0; t < p; ++t) {
        bool all = true;
        for (std::size_t i = 0; i < sliced.size() && all; ++i) all = sliced[i].value(coeffs[i].data(), t) == 0;
        count += all;
      }
    }
    return count;
  });
  const Coords last{0, 0, 0, 1};
  if (std::all_of(forms.begin(), forms.end(), [&](const HomogeneousForm& f) { return evaluate(f, last) == 0; })) {
    ++total;
  }
  return total;
}

}  // namespace

std::uint64_t count_points_generic(const HomogeneousForm& f, unsigned threads) {
  require_counting_range(f.p());
  return count_single(f, threads);
}

std::uint64_t count_common_zeros(std::span<const HomogeneousForm> forms, unsigned threads) {
  if (forms.empty()) throw std::invalid_argument("count_common_zeros needs at least one form");
  for (const auto& f : forms) {
    if (!(f.field() == forms.front().field())) throw std::invalid_argument("forms over different fields");
  }
  require_counting_range(forms.front().p());
  if (forms.size() == 1) return count_single(forms.front(), threads);
  return count_multi(forms, threads);
}

std::uint64_t affine_count_diagonal(const HomogeneousForm& f) {
  if (!f.is_diagonal()) throw std::invalid_argument("count_points_diagonal needs a diagonal form");
  const auto& F = f.field();
  const std::uint64_t p = F.p();
  // p^4 affine tuples must fit in 64 bits.
  if (p >= (1u << 16)) throw std::invalid_argument("diagonal counting supports p < 2^16");

  // hist[i][v] = #{t : c_i t^e = v}; an absent variable contributes p at 0.
  std::array<std::vector<std::uint64_t>, 4> hist;
  for (auto& h : hist) {
    h.assign(p, 0);
    h[0] = p;
  }
  for (const auto& m : f.monomials()) {
    const int var = static_cast<int>(std::find_if(m.exps.begin(), m.exps.end(), [](auto e) { return e > 0; }) -
                                     m.exps.begin());
    auto& h = hist[var];
    std::fill(h.begin(), h.end(), 0);
    for (std::uint64_t t = 0; t < p; ++t) ++h[F.mul(m.coeff, F.pow(t, m.exps[var]))];
  }

  auto convolve = [p](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out(p, 0);
    for (std::uint64_t i = 0; i < p; ++i) {
      if (a[i] == 0) continue;
      for (std::uint64_t j = 0; j < p; ++j) {
        if (b[j] == 0) continue;
        const std::uint64_t s = i + j >= p ? i + j - p : i + j;
        out[s] += a[i] * b[j];
      }
    }
    return out;
  };
  const auto h01 = convolve(hist[0], hist[1]);
  const auto h23 = convolve(hist[2], hist[3]);
  std::uint64_t zeros = h01[0] * h23[0];
  for (std::uint64_t a = 1; a < p; ++a) zeros += h01[a] * h23[p - a];
  return zeros;
}

std::uint64_t count_points_diagonal(const HomogeneousForm& f) {
  return (affine_count_diagonal(f) - 1) / (f.p() - 1);
}

std::uint64_t count_points_x(const HomogeneousForm& f, unsigned threads) {
  std::vector<HomogeneousForm> forms{f};
  // A zero twist vanishes everywhere and drops out of the intersection.
  if (auto s1 = twist_s1(f)) forms.push_back(*s1);
  if (auto s2 = twist_s2(f)) forms.push_back(*s2);
  return count_common_zeros(forms, threads);
}

std::uint64_t points_on_lines(const HomogeneousForm& f, const LineConfiguration& lines) {
  const auto& F = f.field();
  const FormEvaluator eval(f);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& line : lines.lines) {
    for (const auto& pt : line.points(F)) {
      if (eval(pt.coords()) == 0) seen.insert(pt.index(F.p()));
    }
  }
  return seen.size();
}

std::uint64_t points_off_lines(const HomogeneousForm& f, const LineConfiguration& lines, unsigned threads) {
  return count_points_generic(f, threads) - points_on_lines(f, lines);
}

CountReport census(const HomogeneousForm& f, unsigned threads) {
  CountReport r;
  r.p = f.p();
  r.d = f.degree();
  r.total = count_points_generic(f, threads);
  if (f.degree() < f.p()) {
    const auto cfg = lines_on_surface(f, threads);
    r.m = cfg.m();
    r.on_lines = points_on_lines(f, cfg);
    r.off_lines = r.total - *r.on_lines;
    r.x_total = count_points_x(f, threads);
  }
  return r;
}

}  // namespace surfcensus
