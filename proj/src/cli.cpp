#include "surfcensus/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "surfcensus/bounds.hpp"
#include "surfcensus/cyclotomic.hpp"
#include "surfcensus/divisor.hpp"
#include "surfcensus/families.hpp"
#include "surfcensus/parallel.hpp"
#include "surfcensus/projgeom.hpp"
#include "surfcensus/surfacecount.hpp"
#include "surfcensus/surfacelines.hpp"

namespace surfcensus {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phase timer feeding the "timings" block.
class Timings {
 public:
  template <typename Fn>
  auto time(const std::string& phase, Fn fn) {
    const auto start = Clock::now();
    auto result = fn();
    phases_[phase] = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  }
  Json to_json(double total) const {
    Json j = Json::object();
    for (const auto& [k, v] : phases_) j[k + "_seconds"] = v;
    j["total_seconds"] = total;
    return j;
  }

 private:
  std::map<std::string, double> phases_;
};

Json int_json(Int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_string_i128(v);
}

Json bound_json(const BoundEntry& b) {
  return Json{{"value", b.value.str()}, {"floor", int_json(b.value.floor())}, {"applicability", to_string(b.applicability)}};
}

Json fp2_json(const Fp2& x) { return Json::array({x.a, x.b}); }

Json point_json(const ExtProjPoint& pt) {
  Json j = Json::array();
  for (const auto& c : pt.coords) j.push_back(fp2_json(c));
  return j;
}

Json line_json(const ProjLine& L) {
  return Json::array({Json(L.rows()[0]), Json(L.rows()[1])});
}

std::uint64_t require_p(const RunConfig& cfg) {
  if (!cfg.p) throw UsageError("--p is required for '" + cfg.command + "'");
  if (!is_prime(*cfg.p)) throw UsageError("--p " + std::to_string(*cfg.p) + " is not prime");
  return *cfg.p;
}

// --form may also be a JSON list of [coefficient, [e0, e1, e2, e3]] pairs.
HomogeneousForm form_from_text(const std::string& text, const PrimeField& F) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("form term list is not valid JSON: ") + e.what());
    }
    std::vector<Term> terms;
    try {
      for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || t[1].size() != 4) throw UsageError("each term must be [c, [e0, e1, e2, e3]]");
        Exponents e;
        for (int i = 0; i < 4; ++i) e[i] = t[1][i].get<std::uint32_t>();
        terms.push_back({t[0].get<std::int64_t>(), e});
      }
    } catch (const Json::exception& e) {
      throw UsageError(std::string("bad term list: ") + e.what());
    }
    try {
      return HomogeneousForm(F, terms);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad term list: ") + e.what());
    }
  }
  return parse_form(text, F);
}

FamilySpec family_spec(const RunConfig& cfg) {
  FamilySpec spec;
  spec.name = parse_family_name(*cfg.family);
  spec.p = require_p(cfg);
  if (spec.name == FamilyName::fermat || spec.name == FamilyName::remark44) {
    if (!cfg.d) throw UsageError("--d is required for family " + to_string(spec.name));
    spec.d = *cfg.d;
  }
  spec.validate();
  return spec;
}

struct FormSource {
  HomogeneousForm form;
  std::optional<FamilySpec> family;
  std::string description;
};

FormSource load_form(const RunConfig& cfg) {
  const int sources = (cfg.form_text ? 1 : 0) + (cfg.form_file ? 1 : 0) + (cfg.family ? 1 : 0);
  if (sources != 1) throw UsageError("give exactly one of --form, --form-file, --family");
  if (cfg.family) {
    const auto spec = family_spec(cfg);
    return {build_family(spec), spec, "family " + to_string(spec.name)};
  }
  const PrimeField F(require_p(cfg));
  if (cfg.form_text) return {form_from_text(*cfg.form_text, F), std::nullopt, "inline form"};
  std::ifstream in(*cfg.form_file);
  if (!in) throw UsageError("cannot read form file '" + *cfg.form_file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return {form_from_text(buf.str(), F), std::nullopt, "form file " + *cfg.form_file};
}

Json form_json(const FormSource& src) {
  Json j{{"source", src.description}, {"p", src.form.p()}, {"degree", src.form.degree()}, {"text", to_string(src.form)},
         {"monomials", src.form.size()}};
  if (src.family) {
    j["family"] = to_string(src.family->name);
    if (src.family->name == FamilyName::fermat || src.family->name == FamilyName::remark44) j["d"] = src.family->d;
  }
  return j;
}

Json config_json(const RunConfig& cfg) {
  Json j{{"command", cfg.command}};
  if (cfg.p) j["p"] = *cfg.p;
  if (cfg.d) j["d"] = *cfg.d;
  if (cfg.form_text) j["form"] = *cfg.form_text;
  if (cfg.form_file) j["form_file"] = *cfg.form_file;
  if (cfg.family) j["family"] = *cfg.family;
  if (cfg.m) j["m"] = *cfg.m;
  if (cfg.k) j["k"] = *cfg.k;
  j["ext"] = cfg.ext;
  j["threads"] = cfg.threads;
  j["format"] = cfg.format;
  return j;
}

// ---------------------------------------------------------------------------
// Check list used by verify

class Checks {
 public:
  void add(const std::string& name, bool passed, Json measured, Json expected) {
    all_passed_ = all_passed_ && passed;
    list_.push_back(Json{{"check", name}, {"passed", passed}, {"measured", std::move(measured)}, {"expected", std::move(expected)}});
  }
  bool all_passed() const { return all_passed_; }
  const Json& json() const { return list_; }

 private:
  Json list_ = Json::array();
  bool all_passed_ = true;
};

// Points of S where S1 or S2 does not vanish; zero by Euler's identity.
std::uint64_t rational_points_outside_x(const HomogeneousForm& f, unsigned threads) {
  const auto s1 = twist_s1(f), s2 = twist_s2(f);
  const FormEvaluator ef(f);
  std::optional<FormEvaluator> e1, e2;
  if (s1) e1.emplace(*s1);
  if (s2) e2.emplace(*s2);
  const PrimeField& F = f.field();
  return parallel_sum(point_count(f.p()), threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t bad = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto pt = ProjPoint::from_index(F, i);
      if (ef(pt.coords()) != 0) continue;
      if ((e1 && (*e1)(pt.coords()) != 0) || (e2 && (*e2)(pt.coords()) != 0)) ++bad;
    }
    return bad;
  });
}

// Half-Fermat lines pair variables as {x,y}{z,w}, {x,z}{y,w} or {x,w}{y,z};
// the pairing shows in the support of the first RREF row.
int pairing_type(const ProjLine& L) {
  const auto& r = L.rows()[0];
  for (int j = 1; j < 4; ++j)
    if (r[j] != 0) return j;
  return 0;
}

// ---------------------------------------------------------------------------
// Commands

Json cmd_count(const RunConfig& cfg, Timings& t) {
  const auto src = load_form(cfg);
  const auto& f = src.form;
  const auto report = t.time("census", [&] { return census(f, cfg.threads); });
  Json r{{"form", form_json(src)}, {"total", report.total}};
  if (report.m) {
    r["m"] = *report.m;
    r["on_lines"] = *report.on_lines;
    r["off_lines"] = *report.off_lines;
    r["x_total"] = *report.x_total;
  } else {
    r["note"] = "degree >= p: line and X counts skipped";
  }
  if (f.is_diagonal() && f.p() < (1u << 16)) {
    r["diagonal_total"] = t.time("diagonal", [&] { return count_points_diagonal(f); });
  }
  return r;
}

Json cmd_lines(const RunConfig& cfg, Timings& t) {
  const auto src = load_form(cfg);
  const auto& f = src.form;
  const auto lines = t.time("lines", [&] { return lines_on_surface(f, cfg.threads); });
  Json list = Json::array();
  std::uint64_t witnessed = 0;
  t.time("transversality", [&] {
    for (const auto& L : lines.lines) {
      const auto ev = transversality_along_line(f, L, cfg.ext);
      Json item{{"rows", line_json(L)}, {"transversal_witness", ev.found_transversal_point},
                {"points_scanned", ev.points_scanned}};
      if (ev.witness) item["witness"] = point_json(*ev.witness);
      if (ev.found_transversal_point) ++witnessed;
      list.push_back(std::move(item));
    }
    return 0;
  });
  Json r{{"form", form_json(src)}, {"m", lines.m()}, {"pair_sum", pairwise_intersection_sum(lines)},
         {"lines_with_witness", witnessed}, {"ext", cfg.ext}, {"lines", std::move(list)}};
  if (src.family && src.family->name == FamilyName::fermat && is_dth_power(f.field(), f.p() - 1, src.family->d)) {
    r["matches_expected_fermat_lines"] = lines.lines == fermat_expected_lines(src.family->d, f.field());
  }
  return r;
}

Json bounds_json(const BoundReport& b) {
  Json j{{"p", b.p}, {"d", b.d}, {"m", b.m}, {"m_assumed", b.m_assumed}, {"regime_2_lt_d_lt_p", b.regime},
         {"line_cap", int_json(b.line_cap)}};
  j["deligne"] = bound_json(b.deligne);
  j["voloch_square"] = bound_json(b.voloch_square);
  j["voloch_noline"] = bound_json(b.voloch_noline);
  j["felipe"] = bound_json(b.felipe);
  j["felipe_plus"] = bound_json(b.felipe_plus);
  j["improved"] = bound_json(b.improved);
  j["improved_no_m"] = bound_json(b.improved_no_m);
  j["improvement_threshold"] = improvement_threshold(b.d).str();
  j["improvement_gap"] = improvement_gap(b.p, b.d, b.m).str();
  if (b.actual_count) {
    j["actual_count"] = *b.actual_count;
    Json within = Json::object();
    const std::pair<const char*, const BoundEntry*> entries[] = {
        {"deligne", &b.deligne},       {"voloch_square", &b.voloch_square}, {"voloch_noline", &b.voloch_noline},
        {"felipe", &b.felipe},         {"felipe_plus", &b.felipe_plus},     {"improved", &b.improved},
        {"improved_no_m", &b.improved_no_m}};
    for (const auto& [name, entry] : entries) within[name] = count_within(*b.actual_count, entry->value);
    j["count_within"] = within;
  }
  return j;
}

Json cmd_bounds(const RunConfig& cfg, Timings& t) {
  const bool has_form = cfg.form_text || cfg.form_file || cfg.family;
  if (!has_form) {
    if (!cfg.d) throw UsageError("bounds needs --d or a form source");
    const auto p = require_p(cfg);
    return bounds_json(evaluate_bounds(static_cast<std::int64_t>(p), *cfg.d, cfg.m));
  }
  const auto src = load_form(cfg);
  const auto& f = src.form;
  BoundEvidence ev;
  const auto sing = t.time("singular", [&] { return singular_points(f, cfg.ext); });
  ev.smooth = sing.none_found();
  std::optional<std::int64_t> m = cfg.m;
  if (f.degree() < f.p()) {
    const auto lines = t.time("lines", [&] { return lines_on_surface(f, cfg.threads); });
    if (m && *m != static_cast<std::int64_t>(lines.m())) {
      throw UsageError("--m " + std::to_string(*m) + " disagrees with the measured " + std::to_string(lines.m()) + " lines");
    }
    m = static_cast<std::int64_t>(lines.m());
    bool all = true;
    t.time("transversality", [&] {
      for (const auto& L : lines.lines) all = all && transversality_along_line(f, L, 2).found_transversal_point;
      return 0;
    });
    ev.lines_transversal = all;
  }
  auto report = evaluate_bounds(static_cast<std::int64_t>(f.p()), f.degree(), m, ev);
  report.actual_count = t.time("count", [&] { return count_points_generic(f, cfg.threads); });
  Json r = bounds_json(report);
  r["form"] = form_json(src);
  r["smooth_evidence"] = Json{{"ext_degree", cfg.ext}, {"singular_points_found", !sing.none_found()}};
  return r;
}

Json cmd_verify(const RunConfig& cfg, Timings& t, Checks& checks) {
  if (!cfg.family) throw UsageError("verify needs --family");
  const auto spec = family_spec(cfg);
  const auto f = build_family(spec);
  const std::uint64_t p = spec.p;
  const std::uint32_t d = f.degree();
  Json r{{"form", form_json({f, spec, "family " + to_string(spec.name)})}};

  const auto count = t.time("count", [&] { return count_points_generic(f, cfg.threads); });
  r["count"] = count;
  if (f.is_diagonal() && p < (1u << 16)) {
    checks.add("diagonal counter agrees", count_points_diagonal(f) == count, count_points_diagonal(f), count);
  }
  if (spec.name != FamilyName::fermat && spec.name != FamilyName::remark44) {
    const auto cf = closed_form_count(spec);
    r["closed_form"] = Json{{"kind", to_string(cf.kind)}, {"value", cf.value}, {"from_exception_table", cf.from_exception_table}};
    if (cf.kind == CountKind::exact) {
      checks.add("count equals closed form", count == cf.value, count, cf.value);
    } else {
      checks.add("count at least closed-form lower bound", count >= cf.value, count, cf.value);
    }
  }
  if (spec.name == FamilyName::half_fermat) {
    const std::uint64_t u = spec.u();
    const auto n_aff = affine_count_diagonal(f);
    checks.add("affine count 6u^4 + 12u^2 + 1", n_aff == 6 * u * u * u * u + 12 * u * u + 1, n_aff,
               6 * u * u * u * u + 12 * u * u + 1);
  }
  if (spec.name == FamilyName::quintic_type) {
    const std::int64_t u = static_cast<std::int64_t>(spec.u());
    const auto felipe = evaluate_bounds(static_cast<std::int64_t>(p), d, 0).felipe.value;
    checks.add("felipe bound at m = 0 equals 28u^3", felipe == Rational(28 * u * u * u), felipe.str(), 28 * u * u * u);
  }
  if (spec.name == FamilyName::remark44) {
    const auto ev = remark44_line_check(spec.d, p);
    Json j{{"skipped", ev.skipped}};
    if (ev.skipped) {
      j["reason"] = ev.skip_reason;
    } else {
      j["field_degree"] = ev.field_degree;
      j["omega"] = fp2_json(*ev.omega);
      j["lambda"] = fp2_json(*ev.lambda);
      j["samples"] = ev.samples;
      if (ev.transversality) j["transversal_witness"] = ev.transversality->found_transversal_point;
      checks.add("omega/lambda line vanishes identically", ev.vanishes, ev.samples, ev.samples);
    }
    r["omega_lambda_lines"] = j;
  }

  if (d >= p) {
    r["note"] = "degree >= p: line, twist and bound checks skipped";
    return r;
  }

  const auto outside = t.time("euler", [&] { return rational_points_outside_x(f, cfg.threads); });
  checks.add("rational points of S lie on S1 and S2", outside == 0, outside, 0);

  const auto lines = t.time("lines", [&] { return lines_on_surface(f, cfg.threads); });
  const std::int64_t m = static_cast<std::int64_t>(lines.m());
  const std::int64_t pair_sum = pairwise_intersection_sum(lines);
  r["m"] = m;
  r["pair_sum"] = pair_sum;

  bool all_transversal = true;
  std::uint64_t witnessed = 0;
  t.time("transversality", [&] {
    for (const auto& L : lines.lines) {
      const bool w = transversality_along_line(f, L, 2).found_transversal_point;
      witnessed += w ? 1 : 0;
      all_transversal = all_transversal && w;
    }
    return 0;
  });
  r["lines_with_transversal_witness"] = witnessed;

  const auto off = points_off_lines(f, lines, cfg.threads);
  r["points_off_lines"] = off;

  switch (spec.name) {
    case FamilyName::half_fermat: {
      const auto want = half_fermat_line_stats(p);
      std::int64_t same = 0, cross = 0;
      for (std::size_t i = 0; i < lines.m(); ++i)
        for (std::size_t j = 0; j < lines.m(); ++j) {
          if (!lines.incidence[i][j]) continue;
          (pairing_type(lines.lines[i]) == pairing_type(lines.lines[j]) ? same : cross) += 1;
        }
      checks.add("m = 3u^2", static_cast<std::uint64_t>(m) == want.m, m, want.m);
      checks.add("same-type meeting pairs 3u^2(p-3)", static_cast<std::uint64_t>(same) == want.same_type_pairs, same,
                 want.same_type_pairs);
      checks.add("cross-type meeting pairs 6u^3", static_cast<std::uint64_t>(cross) == want.cross_type_pairs, cross,
                 want.cross_type_pairs);
      checks.add("total meeting pairs 6u^2(p-2)", static_cast<std::uint64_t>(pair_sum) == want.total_pairs, pair_sum,
                 want.total_pairs);
      checks.add("no rational points off the lines", off == 0, off, 0);
      break;
    }
    case FamilyName::fermat: {
      if (is_dth_power(f.field(), p - 1, spec.d)) {
        const auto expected = fermat_expected_lines(spec.d, f.field());
        checks.add("m = 3d^2", m == 3 * std::int64_t{spec.d} * spec.d, m, 3 * spec.d * spec.d);
        checks.add("lines equal the expected Fermat lines", lines.lines == expected, m, expected.size());
      }
      break;
    }
    case FamilyName::quintic_type:
      checks.add("no rational lines", m == 0, m, 0);
      break;
    case FamilyName::septic_type_F:
      if (p < 300 && p != 29) checks.add("no rational lines", m == 0, m, 0);
      break;
    default:
      break;
  }

  if (2 < d) {
    checks.add("every line has a transversal witness", all_transversal, witnessed, m);
  }

  const auto triple = DegreeTriple::from_twist(d, static_cast<std::int64_t>(p));
  const Int128 gamma = deg_gamma(triple, m, pair_sum);
  r["deg_gamma"] = int_json(gamma);
  r["degrees"] = Json::array({int_json(triple.d), int_json(triple.d1), int_json(triple.d2)});
  checks.add("deg Gamma expansion consistent", gamma == deg_gamma_unexpanded(triple, m, pair_sum), int_json(gamma),
             int_json(deg_gamma_unexpanded(triple, m, pair_sum)));
  if (spec.name == FamilyName::half_fermat) checks.add("deg Gamma = 0", gamma == 0, int_json(gamma), 0);
  if (m >= 1) checks.add("deg Gamma sandwich", lemma1_check(triple, m, gamma), int_json(gamma), "2m <= middle <= m(m+1)");

  if (2 < d && all_transversal) {
    const auto sing = t.time("singular", [&] { return singular_points(f, cfg.ext); });
    BoundEvidence ev{sing.none_found(), all_transversal};
    auto b = evaluate_bounds(static_cast<std::int64_t>(p), d, m, ev);
    b.actual_count = count;
    checks.add("count within improved bound", count_within(count, b.improved.value), count, b.improved.value.str());
    checks.add("count within felipe bound", count_within(count, b.felipe.value), count, b.felipe.value.str());
    r["bounds"] = bounds_json(b);
  }
  return r;
}

Json cmd_cyclo(const RunConfig& cfg, Timings& t) {
  if (!cfg.d || !cfg.k) throw UsageError("cyclo needs --d and --k");
  const auto d = *cfg.d, k = *cfg.k;
  if (d < 2 || euler_phi(d) > 6) throw UsageError("cyclo needs d >= 2 with phi(d) <= 6");
  if (k < 1 || k > 7) throw UsageError("cyclo needs 1 <= k <= 7");
  const auto primes = t.time("search", [&] { return exceptional_primes(d, k); });
  Json list = Json::array();
  for (const auto& e : primes) {
    std::set<Int128> norms;
    for (const auto& w : e.witnesses) norms.insert(w.norm);
    Json nj = Json::array();
    for (auto n : norms) nj.push_back(int_json(n));
    // Headline witness: the largest multiset, then the smallest norm.
    const auto& best = *std::min_element(e.witnesses.begin(), e.witnesses.end(), [](const NormWitness& a, const NormWitness& b) {
      if (a.multiset.size() != b.multiset.size()) return a.multiset.size() > b.multiset.size();
      return a.norm < b.norm;
    });
    Json zero_sums = Json::array();
    for (const auto& z : zero_sums_mod_p(d, e.prime, k)) zero_sums.push_back(z);
    list.push_back(Json{{"prime", e.prime},
                        {"witness", best.multiset.str()},
                        {"witness_norm", int_json(best.norm)},
                        {"norms", std::move(nj)},
                        {"zero_sums_mod_p", std::move(zero_sums)}});
  }
  Json r{{"d", d}, {"k", k}, {"norm_bound", int_json([&] {
                                Int128 b = 1;
                                for (std::uint32_t i = 0; i < euler_phi(d); ++i) b *= k;
                                return b;
                              }())},
         {"primes", Json::array()}, {"exceptional", std::move(list)}};
  for (const auto& e : primes) r["primes"].push_back(e.prime);
  if (cfg.p) {
    const auto p = require_p(cfg);
    if ((p - 1) % d != 0) throw UsageError("--p must be 1 mod d for zero-sum listings");
    r["zero_sums_at_p"] = Json{{"p", p}, {"sums", zero_sums_mod_p(d, p, k)}};
    if (d == 5 && k == 5) r["zero_sums_at_p"]["only_full_orbit"] = verify_lemma41(p);
  }
  return r;
}

Json cmd_scan_septic(const RunConfig& cfg, Timings& t) {
  const std::uint64_t pmax = cfg.p.value_or(300);
  if (pmax > 1000) throw UsageError("scan-septic is limited to --p <= 1000");
  const auto scan = t.time("scan", [&] { return septic_scan_u23(pmax, cfg.threads); });
  Json hits = Json::array(), rows = Json::array();
  for (const auto& [p, found] : scan) {
    rows.push_back(Json{{"p", p}, {"points_with_u2_0_u3_1", found}});
    if (found) hits.push_back(p);
  }
  return Json{{"p_max", pmax}, {"primes_with_points", std::move(hits)}, {"scan", std::move(rows)},
              {"norm_zeta7_sq_plus_zeta7_plus_2", int_json(cyc_norm(CycInt(7, {2, 1, 1})))}};
}

Json cmd_xscheme(const RunConfig& cfg, Timings& t) {
  const auto src = load_form(cfg);
  const auto& f = src.form;
  if (f.degree() >= f.p()) throw UsageError("xscheme needs degree d < p");
  const auto triple = DegreeTriple::from_twist(f.degree(), static_cast<std::int64_t>(f.p()));
  const auto total = t.time("count_s", [&] { return count_points_generic(f, cfg.threads); });
  const auto x_total = t.time("count_x", [&] { return count_points_x(f, cfg.threads); });
  const auto outside = t.time("euler", [&] { return rational_points_outside_x(f, cfg.threads); });
  const auto lines = t.time("lines", [&] { return lines_on_surface(f, cfg.threads); });
  const std::int64_t m = static_cast<std::int64_t>(lines.m());
  const std::int64_t pair_sum = pairwise_intersection_sum(lines);
  const Int128 gamma = deg_gamma(triple, m, pair_sum);
  Json r{{"form", form_json(src)},
         {"degrees", Json::array({int_json(triple.d), int_json(triple.d1), int_json(triple.d2)})},
         {"s_total", total},
         {"x_total", x_total},
         {"s_points_not_on_x", outside},
         {"m", m},
         {"pair_sum", pair_sum},
         {"points_off_lines", points_off_lines(f, lines, cfg.threads)},
         {"deg_gamma", int_json(gamma)}};
  if (m >= 1) r["sandwich_holds"] = lemma1_check(triple, m, gamma);
  return r;
}

// ---------------------------------------------------------------------------
// Table rendering

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v)
    if (!row.is_object()) return false;
  return true;
}

void render(std::ostream& os, const Json& v, const std::string& indent);

void render_table(std::ostream& os, const Json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, _] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& row : rows)
      if (row.contains(cols[c])) width[c] = std::max(width[c], scalar_text(row[cols[c]]).size());
  }
  os << indent;
  for (std::size_t c = 0; c < cols.size(); ++c) os << std::left << std::setw(static_cast<int>(width[c]) + 2) << cols[c];
  os << "\n";
  for (const auto& row : rows) {
    os << indent;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string cell = row.contains(cols[c]) ? scalar_text(row[cols[c]]) : "";
      os << std::left << std::setw(static_cast<int>(width[c]) + 2) << cell;
    }
    os << "\n";
  }
}

void render(std::ostream& os, const Json& v, const std::string& indent) {
  std::size_t key_width = 0;
  for (const auto& [k, _] : v.items()) key_width = std::max(key_width, k.size());
  for (const auto& [k, val] : v.items()) {
    if (val.is_object()) {
      os << indent << k << ":\n";
      render(os, val, indent + "  ");
    } else if (is_table(val)) {
      os << indent << k << ":\n";
      render_table(os, val, indent + "  ");
    } else {
      os << indent << std::left << std::setw(static_cast<int>(key_width) + 2) << k << scalar_text(val) << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Rational points and lines on surfaces in P^3 over prime fields", "surfcensus"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t p = 0;
  std::uint32_t d = 0, k = 0;
  std::int64_t m = 0;
  std::string form_text, form_file, family, out_path;
  auto* opt_p = app.add_option("--p", p, "prime modulus (scan-septic: upper limit)");
  auto* opt_d = app.add_option("--d", d, "degree (fermat, remark44, bounds) or root order (cyclo)");
  auto* opt_form = app.add_option("--form", form_text, "form text, or a JSON list of [c, [e0,e1,e2,e3]]");
  auto* opt_file = app.add_option("--form-file", form_file, "file holding one form");
  auto* opt_family = app.add_option("--family", family, "fermat | half-fermat | quintic | septic | g2 | remark44");
  auto* opt_m = app.add_option("--m", m, "number of rational lines");
  auto* opt_k = app.add_option("--k", k, "maximal multiset size (cyclo)");
  app.add_option("--ext", cfg.ext, "extension degree for singular points and witnesses")->check(CLI::IsMember({1, 2}));
  auto* opt_threads = app.add_option("--threads", cfg.threads, "worker count (default: all cores)");
  app.add_option("--format", cfg.format, "table | json")->check(CLI::IsMember({"table", "json"}));
  auto* opt_out = app.add_option("--out", out_path, "write the report to this file");

  const char* commands[][2] = {{"count", "count rational points of S and X"},
                               {"lines", "list the rational lines with transversality witnesses"},
                               {"bounds", "evaluate every bound, optionally against a measured surface"},
                               {"verify", "run the consistency checks for a named family"},
                               {"cyclo", "exceptional primes for vanishing sums of roots of unity"},
                               {"scan-septic", "the u2 = 0, u3 = 1 scan of the septic surface"},
                               {"xscheme", "rational points of X = S ∩ S1 ∩ S2 and deg Gamma"}};
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (*opt_p) cfg.p = p;
  if (*opt_d) cfg.d = d;
  if (*opt_form) cfg.form_text = form_text;
  if (*opt_file) cfg.form_file = form_file;
  if (*opt_family) cfg.family = family;
  if (*opt_m) cfg.m = m;
  if (*opt_k) cfg.k = k;
  if (*opt_out) cfg.out_path = out_path;
  if (*opt_threads && cfg.threads < 1) {
    err << "error: --threads must be at least 1\n";
    return kExitUsage;
  }
  if (!*opt_threads) cfg.threads = resolve_threads(0);

  Json doc{{"schema", kReportSchema}, {"command", config_json(cfg)}};
  Timings timings;
  Checks checks;
  const auto start = Clock::now();
  int code = kExitOk;
  try {
    Json results;
    if (cfg.command == "count") results = cmd_count(cfg, timings);
    else if (cfg.command == "lines") results = cmd_lines(cfg, timings);
    else if (cfg.command == "bounds") results = cmd_bounds(cfg, timings);
    else if (cfg.command == "verify") results = cmd_verify(cfg, timings, checks);
    else if (cfg.command == "cyclo") results = cmd_cyclo(cfg, timings);
    else if (cfg.command == "scan-septic") results = cmd_scan_septic(cfg, timings);
    else results = cmd_xscheme(cfg, timings);
    doc["results"] = std::move(results);
    if (cfg.command == "verify") {
      doc["checks"] = checks.json();
      doc["all_passed"] = checks.all_passed();
      if (!checks.all_passed()) code = kExitCheckFailed;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  doc["timings"] = timings.to_json(std::chrono::duration<double>(Clock::now() - start).count());

  std::ostringstream text;
  if (cfg.format == "json") {
    text << doc.dump(2) << "\n";
  } else {
    render(text, doc, "");
  }
  if (cfg.out_path) {
    std::ofstream file(*cfg.out_path);
    if (!file) {
      err << "error: cannot write '" << *cfg.out_path << "'\n";
      return kExitUsage;
    }
    file << text.str();
  } else {
    out << text.str();
  }
  if (code == kExitCheckFailed) {
    for (const auto& c : checks.json())
      if (!c["passed"].get<bool>())
        err << "FAILED " << c["check"].get<std::string>() << ": measured " << scalar_text(c["measured"]) << ", expected "
            << scalar_text(c["expected"]) << "\n";
  }
  return code;
}

}  // namespace surfcensus
