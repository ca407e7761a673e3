#include "surfcensus/polyform.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace surfcensus {

namespace {

std::vector<Monomial> canonicalize(const PrimeField& field, std::vector<Monomial> in) {
  std::map<Exponents, Residue, std::greater<>> merged;
  for (const auto& m : in) {
    auto& c = merged[m.exps];
    c = field.add(c, m.coeff % field.p());
  }
  std::vector<Monomial> out;
  out.reserve(merged.size());
  for (const auto& [exps, c] : merged) {
    if (c != 0) out.push_back({c, exps});
  }
  return out;
}

std::uint32_t check_homogeneous(const std::vector<Monomial>& ms) {
  const std::uint32_t d = ms.front().degree();
  for (const auto& m : ms) {
    if (m.degree() != d) {
      throw std::invalid_argument("inhomogeneous form: term degrees " + std::to_string(d) + " and " +
                                  std::to_string(m.degree()));
    }
  }
  return d;
}

}  // namespace

HomogeneousForm::HomogeneousForm(const PrimeField& field, std::vector<Monomial> monomials)
    : field_(field), monomials_(canonicalize(field, std::move(monomials))) {
  if (monomials_.empty()) throw std::invalid_argument("zero polynomial is not a surface");
  degree_ = check_homogeneous(monomials_);
}

HomogeneousForm::HomogeneousForm(const PrimeField& field, std::span<const Term> terms)
    : HomogeneousForm(field, [&] {
        std::vector<Monomial> ms;
        ms.reserve(terms.size());
        for (const auto& t : terms) ms.push_back({field.reduce(t.coeff), t.exps});
        return ms;
      }()) {}

std::optional<HomogeneousForm> HomogeneousForm::make(const PrimeField& field, std::vector<Monomial> monomials) {
  auto canon = canonicalize(field, std::move(monomials));
  if (canon.empty()) return std::nullopt;
  return HomogeneousForm(field, std::move(canon));
}

bool HomogeneousForm::is_diagonal() const {
  return std::all_of(monomials_.begin(), monomials_.end(), [](const Monomial& m) {
    return std::count_if(m.exps.begin(), m.exps.end(), [](std::uint32_t e) { return e > 0; }) == 1;
  });
}

std::vector<std::uint32_t> HomogeneousForm::distinct_exponents() const {
  std::vector<std::uint32_t> out;
  for (const auto& m : monomials_) out.insert(out.end(), m.exps.begin(), m.exps.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormParser {
 public:
  FormParser(std::string_view text, const PrimeField& field) : text_(text), field_(field) {}

  HomogeneousForm parse() {
    std::vector<Monomial> terms;
    std::vector<std::size_t> starts;
    skip_space();
    if (at_end()) throw ParseError("empty form", pos_);
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_space();
      } else if (!first) {
        throw ParseError(std::string("expected '+' or '-', found '") + peek() + "'", pos_);
      }
      starts.push_back(pos_);
      Monomial m = parse_term();
      if (negative) m.coeff = field_.neg(m.coeff);
      terms.push_back(m);
      first = false;
      skip_space();
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
      if (terms[i].degree() != terms[0].degree()) {
        throw ParseError("inhomogeneous form: term degrees " + std::to_string(terms[0].degree()) + " and " +
                             std::to_string(terms[i].degree()),
                         starts[i]);
      }
    }
    auto form = HomogeneousForm::make(field_, terms);
    if (!form) throw ParseError("zero polynomial is not a surface", 0);
    if (form->degree() == 0) throw ParseError("constant form has no zero locus", 0);
    return *form;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_factor_start() const {
    if (at_end()) return false;
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == 'z' || c == 'w';
  }

  std::uint64_t parse_uint(bool reduce) {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const auto digit = static_cast<std::uint64_t>(peek() - '0');
      if (reduce) {
        v = field_.add(field_.mul(v, 10 % field_.p()), digit % field_.p());
      } else {
        if (v > (0xffffffffULL - digit) / 10) throw ParseError("exponent too large", start);
        v = v * 10 + digit;
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return v;
  }

  Monomial parse_term() {
    Monomial m{1, {0, 0, 0, 0}};
    if (!at_factor_start()) {
      if (at_end()) throw ParseError("unexpected end of input", pos_);
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    while (true) {
      parse_factor(m);
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (!at_factor_start()) throw ParseError("expected a factor after '*'", pos_);
        continue;
      }
      if (at_factor_start()) continue;
      break;
    }
    return m;
  }

  void parse_factor(Monomial& m) {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      m.coeff = field_.mul(m.coeff, parse_uint(true));
      return;
    }
    const std::size_t start = pos_;
    const char c = peek();
    ++pos_;
    int var = 0;
    if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      var = peek() - '0';
      ++pos_;
      if (var > 3 || (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))) {
        throw ParseError("unknown variable; expected x0..x3", start);
      }
    } else {
      var = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3;
    }
    skip_space();
    std::uint64_t e = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      e = parse_uint(false);
    }
    m.exps[var] += static_cast<std::uint32_t>(e);
  }

  std::string_view text_;
  const PrimeField& field_;
  std::size_t pos_ = 0;
};

}  // namespace

HomogeneousForm parse_form(std::string_view text, const PrimeField& field) {
  return FormParser(text, field).parse();
}

std::string to_string(const HomogeneousForm& f) {
  static constexpr const char* names[4] = {"x0", "x1", "x2", "x3"};
  const std::uint64_t p = f.p();
  std::string out;
  bool first = true;
  for (const auto& m : f.monomials()) {
    const bool negative = m.coeff > p / 2;
    const Residue magnitude = negative ? p - m.coeff : m.coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body;
    if (magnitude != 1 || m.degree() == 0) body = std::to_string(magnitude);
    for (int i = 0; i < 4; ++i) {
      if (m.exps[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += names[i];
      if (m.exps[i] > 1) body += "^" + std::to_string(m.exps[i]);
    }
    out += body;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and derivatives

Residue evaluate(const HomogeneousForm& f, const Coords& point) {
  const auto& F = f.field();
  Residue acc = 0;
  for (const auto& m : f.monomials()) {
    Residue v = m.coeff;
    for (int i = 0; i < 4 && v != 0; ++i) {
      if (m.exps[i]) v = F.mul(v, F.pow(point[i] % F.p(), m.exps[i]));
    }
    acc = F.add(acc, v);
  }
  return acc;
}

Fp2 evaluate(const HomogeneousForm& f, const ExtField2& ext, const ExtCoords& point) {
  Fp2 acc = ext.zero();
  for (const auto& m : f.monomials()) {
    Fp2 v = ext.embed(m.coeff);
    for (int i = 0; i < 4 && !v.is_zero(); ++i) {
      if (m.exps[i]) v = ext.mul(v, ext.pow(point[i], m.exps[i]));
    }
    acc = ext.add(acc, v);
  }
  return acc;
}

std::optional<HomogeneousForm> partial_derivative(const HomogeneousForm& f, int var) {
  if (var < 0 || var > 3) throw std::invalid_argument("variable index must be in 0..3");
  const auto& F = f.field();
  std::vector<Monomial> out;
  for (const auto& m : f.monomials()) {
    const std::uint32_t e = m.exps[var];
    if (e == 0) continue;
    Monomial d = m;
    d.coeff = F.mul(m.coeff, e % F.p());
    d.exps[var] = e - 1;
    out.push_back(d);
  }
  return HomogeneousForm::make(F, std::move(out));
}

namespace {

void require_degree_below_p(const HomogeneousForm& f, const char* what) {
  if (f.degree() >= f.p()) {
    throw std::invalid_argument(std::string(what) + " requires degree d < p (d=" + std::to_string(f.degree()) +
                                ", p=" + std::to_string(f.p()) + ")");
  }
}

}  // namespace

std::optional<HomogeneousForm> twist_s1(const HomogeneousForm& f) {
  require_degree_below_p(f, "twist_s1");
  const auto p = static_cast<std::uint32_t>(f.p());
  std::vector<Monomial> out;
  for (int i = 0; i < 4; ++i) {
    auto di = partial_derivative(f, i);
    if (!di) continue;
    for (auto m : di->monomials()) {
      m.exps[i] += p;
      out.push_back(m);
    }
  }
  return HomogeneousForm::make(f.field(), std::move(out));
}

std::optional<HomogeneousForm> twist_s2(const HomogeneousForm& f) {
  require_degree_below_p(f, "twist_s2");
  const auto p = static_cast<std::uint32_t>(f.p());
  std::vector<Monomial> out;
  for (int i = 0; i < 4; ++i) {
    auto di = partial_derivative(f, i);
    if (!di) continue;
    for (int j = 0; j < 4; ++j) {
      auto dij = partial_derivative(*di, j);
      if (!dij) continue;
      for (auto m : dij->monomials()) {
        m.exps[i] += p;
        m.exps[j] += p;
        out.push_back(m);
      }
    }
  }
  return HomogeneousForm::make(f.field(), std::move(out));
}

HomogeneousForm permute_variables(const HomogeneousForm& f, const std::array<int, 4>& perm) {
  std::vector<Monomial> out;
  for (const auto& m : f.monomials()) {
    Monomial n{m.coeff, {0, 0, 0, 0}};
    for (int i = 0; i < 4; ++i) n.exps[perm[i]] += m.exps[i];
    out.push_back(n);
  }
  return HomogeneousForm(f.field(), std::move(out));
}

HomogeneousForm scale(const HomogeneousForm& f, Residue c) {
  std::vector<Monomial> out;
  for (auto m : f.monomials()) {
    m.coeff = f.field().mul(m.coeff, c);
    out.push_back(m);
  }
  return HomogeneousForm(f.field(), std::move(out));
}

FormEvaluator::FormEvaluator(const HomogeneousForm& f) : p_(f.p()) {
  const auto exps = f.distinct_exponents();
  std::map<std::uint32_t, std::uint32_t> slot;
  for (auto e : exps) {
    slot[e] = static_cast<std::uint32_t>(tables_.size());
    tables_.push_back(f.field().power_table(e));
  }
  for (const auto& m : f.monomials()) {
    Entry entry{m.coeff, {}};
    for (int i = 0; i < 4; ++i) entry.table[i] = slot[m.exps[i]];
    entries_.push_back(entry);
  }
}

Residue FormEvaluator::operator()(const Coords& x) const {
  std::uint64_t acc = 0;
  for (const auto& e : entries_) {
    std::uint64_t v = e.coeff * tables_[e.table[0]][x[0]] % p_;
    v = v * tables_[e.table[1]][x[1]] % p_;
    v = v * tables_[e.table[2]][x[2]] % p_;
    v = v * tables_[e.table[3]][x[3]] % p_;
    acc += v;
    if (acc >= p_) acc -= p_;
  }
  return acc;
}

}  // namespace surfcensus
