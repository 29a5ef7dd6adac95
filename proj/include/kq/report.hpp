#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kq/fock.hpp"
#include "kq/hproj.hpp"
#include "kq/io.hpp"
#include "kq/observables.hpp"
#include "kq/op_matrix.hpp"
#include "kq/section_op.hpp"

namespace kq {

using ojson = nlohmann::ordered_json;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n = 1;
  Rat k = rat(-4);
  Rat hbar = rat(1, 3);
  int cutoff = 6;
  MeasureMode measure = MeasureMode::corrected;
  double tol = 1e-6;
  std::uint64_t seed = 7;
  int samples = 20;
  std::vector<std::string> suites;  // empty means none (explicit selection)
  std::string format = "json";      // json | csv | text
  std::string out;                  // empty = stdout

  // hproj extras
  std::vector<GaussRat> hproj_point;  // classification point (n entries)
  std::string curve_file;

  void validate() const {
    if (n < 1) throw ConfigError("config: n must be >= 1");
    if (hbar <= 0) throw ConfigError("config: hbar must be positive");
    if (cutoff < 0) throw ConfigError("config: cutoff must be >= 0");
    if (!(tol > 0)) throw ConfigError("config: tol must be positive");
    if (format != "json" && format != "csv" && format != "text")
      throw ConfigError("config: unknown format " + format);
    for (const auto& s : suites)
      if (s != "geometry" && s != "algebra" && s != "operators" && s != "spectrum" &&
          s != "gram" && s != "adjoint" && s != "hproj")
        throw ConfigError("config: unknown suite " + s);
  }

  ModelParamsPtr params() const { return make_params(n, k, hbar); }
};

struct ReportLine {
  std::string name;
  bool exact = true;  // exact ring identity vs numeric tolerance check
  bool pass = false;
  std::string value;  // optional measured value / note
};

struct SuiteResult {
  std::string name;
  std::vector<ReportLine> lines;
  ojson data;  // suite-specific fields
  bool pass = true;
  double seconds = 0.0;

  void add(std::string lname, bool exact, bool ok, std::string value = "") {
    pass = pass && ok;
    lines.push_back({std::move(lname), exact, ok, std::move(value)});
  }
};

struct Report {
  RunConfig config;
  std::vector<SuiteResult> suites;

  bool all_pass() const {
    for (const auto& s : suites)
      if (!s.pass) return false;
    return true;
  }

  /// 0 all pass; 1 exact-identity failure; 2 numeric-tolerance failure.
  /// (Config/domain errors never produce a report; the driver exits 3.)
  int exit_code() const {
    bool numeric_fail = false;
    for (const auto& s : suites)
      for (const auto& l : s.lines) {
        if (!l.pass && l.exact) return 1;
        if (!l.pass) numeric_fail = true;
      }
    return numeric_fail ? 2 : 0;
  }
};

inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

// ---------------------------------------------------------------------------
// suites

inline SuiteResult geometry_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "geometry";
  auto p = cfg.params();
  Model model = Model::build(p);
  const int n = p->n();

  bool inverse_ok = true;
  for (int a = 0; a < n && inverse_ok; ++a)
    for (int c = 0; c < n && inverse_ok; ++c) {
      AFrac acc = AFrac::zero(p);
      for (int s = 0; s < n; ++s)
        acc = acc + model.metric.g_upper[static_cast<size_t>(a)][static_cast<size_t>(s)] *
                        model.metric.g_lower[static_cast<size_t>(c)][static_cast<size_t>(s)];
      inverse_ok = acc == (a == c ? AFrac::one(p) : AFrac::zero(p));
    }
  res.add("inverse metric pairing g g^{-1} = I", true, inverse_ok);

  bool upper_closed = true;
  for (int a = 0; a < n && upper_closed; ++a)
    for (int b = 0; b < n && upper_closed; ++b) {
      Poly expected = Poly::zero(n);
      if (a == b) expected += Poly::one(n);
      MultiIndex mi(n);
      mi.holo[static_cast<size_t>(a)] += 1;
      mi.anti[static_cast<size_t>(b)] += 1;
      expected += Poly::monomial(mi, GaussRat(p->c()));
      expected = expected * p->A();
      upper_closed = model.metric.g_upper[static_cast<size_t>(a)][static_cast<size_t>(b)] ==
                     AFrac::from_poly(expected, p);
    }
  res.add("inverse metric closed form A(delta + (k/4) z zbar)", true, upper_closed);

  bool gamma_ok = true;
  for (int a = 0; a < n && gamma_ok; ++a)
    for (int b = 0; b < n && gamma_ok; ++b)
      for (int c = 0; c < n && gamma_ok; ++c) {
        Poly num = Poly::zero(n);
        if (a == c) num += Poly::variable(n, b, true);
        if (a == b) num += Poly::variable(n, c, true);
        AFrac expected = AFrac(GaussRat(-p->c()) * num, 1, p);
        gamma_ok = model.metric.gamma(a, b, c) == expected;
      }
  res.add("christoffel closed form -(k/4) A^{-1} (zbar delta + zbar delta)", true, gamma_ok);

  res.add("fundamental 2-form closed", true, check_closed(model.omega));
  bool thm1 = check_theorem1(model.alpha, model.omega);
  res.add("curvature of the connection equals the symplectic form", true, thm1);

  CurvatureReport curv = verify_constant_curvature(model.metric, cfg.samples, cfg.seed);
  res.add("constant holomorphic curvature identity", true, curv.verified && curv.sampled_ok,
          "convention c = " + std::to_string(curv.convention_c));

  auto matrix_json = [&](const AMatrix& m) {
    ojson rows = ojson::array();
    for (const auto& row : m) {
      ojson r = ojson::array();
      for (const auto& e : row) r.push_back(to_string(e));
      rows.push_back(r);
    }
    return rows;
  };
  res.data["params"] = {{"n", n}, {"k", to_string(p->k())}, {"hbar", to_string(p->hbar())}};
  res.data["g_lower"] = matrix_json(model.metric.g_lower);
  res.data["g_upper"] = matrix_json(model.metric.g_upper);
  ojson gammas = ojson::array();
  for (const auto& block : model.metric.christoffel) gammas.push_back(matrix_json(block));
  res.data["christoffel"] = gammas;
  res.data["theorem1"] = thm1;
  res.data["curvature"] = {{"convention_c", curv.convention_c}, {"verified", curv.verified}};
  return res;
}

inline SuiteResult algebra_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "algebra";
  auto p = cfg.params();
  AlgebraReport rep = verify_algebra(p);
  for (const auto& r : rep.relations) res.add(r.name, true, r.holds, r.note);
  res.add("algebra dimension (computed vs claimed)", true, true,
          std::to_string(rep.dimension_computed) + " vs " +
              std::to_string(rep.dimension_paper_claim));
  ojson rel = ojson::array();
  for (const auto& r : rep.relations) rel.push_back({{"name", r.name}, {"holds", r.holds}});
  res.data["relations"] = rel;
  res.data["dimension_computed"] = rep.dimension_computed;
  res.data["dimension_paper_claim"] = rep.dimension_paper_claim;
  return res;
}

/// The three closed-form quantized operators, built directly.
struct ExpectedOperators {
  HoloDiffOp H;
  std::vector<HoloDiffOp> N;
  std::vector<HoloDiffOp> Nbar;
};

inline ExpectedOperators expected_operators(const ModelParamsPtr& p) {
  const int n = p->n();
  const GaussRat hb{p->hbar()};
  ExpectedOperators e{HoloDiffOp(n), {}, {}};
  HoloDiffOp h(n);
  for (int v = 0; v < n; ++v) h = h + HoloDiffOp::first_order(hb * Poly::variable(n, v, false), v);
  h.add_term(DerivIndex(n), Poly::constant(n, GaussRat(Rat(p->hbar() * n / 2))));
  e.H = h;
  for (int a = 0; a < n; ++a) {
    HoloDiffOp na(n);
    GaussRat lead = GaussRat(Rat(-p->hbar() * p->c()));
    for (int v = 0; v < n; ++v)
      na = na + HoloDiffOp::first_order(
                    lead * (Poly::variable(n, a, false) * Poly::variable(n, v, false)), v);
    GaussRat c0 = GaussRat(Rat(1 - p->hbar() * p->k() * (n + 1) / 8));
    na.add_term(DerivIndex(n), c0 * Poly::variable(n, a, false));
    e.N.push_back(na);
    e.Nbar.push_back(HoloDiffOp::first_order(Poly::constant(n, hb), a));
  }
  return e;
}

inline SuiteResult operators_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "operators";
  auto p = cfg.params();
  Model model = Model::build(p);
  ObservableFamily fam = build_family(p);
  ExpectedOperators expected = expected_operators(p);
  const int n = p->n();

  QuantizedOperator qh = quantize(fam.H, model);
  res.add("Q H = hbar (z^v d_v + n/2)", true, qh.on_holo == expected.H);
  bool n_ok = true, nbar_ok = true;
  for (int a = 0; a < n; ++a) {
    if (quantize(fam.N[static_cast<size_t>(a)], model).on_holo != expected.N[static_cast<size_t>(a)])
      n_ok = false;
    if (quantize(fam.Nbar[static_cast<size_t>(a)], model).on_holo !=
        expected.Nbar[static_cast<size_t>(a)])
      nbar_ok = false;
  }
  res.add("Q N^a closed form", true, n_ok);
  res.add("Q Nbar^a = hbar d_a", true, nbar_ok);

  Observable one(AFrac::one(p), "1");
  QuantizedOperator qone = quantize(one, model);
  res.add("Q 1 = identity", true, qone.on_holo == HoloDiffOp::multiplication(Poly::one(n)));

  HomomorphismCheck hom = check_homomorphism(model);
  GaussRat minus_i_hbar(Rat(0), -p->hbar());
  res.add("bracket transfer constant = -i hbar", true,
          hom.calibrated && hom.constant == minus_i_hbar, to_string(hom.constant));
  res.add("[Qf, Qg] = c Q{f,g} on the family", true, hom.holds_quantized);
  res.add("prequantized commutators transfer with the same c", true, hom.holds_prequantized);

  res.data["operator_H"] = to_string(qh.on_holo);
  ojson nops = ojson::array(), nbops = ojson::array();
  for (int a = 0; a < n; ++a) {
    nops.push_back(to_string(quantize(fam.N[static_cast<size_t>(a)], model).on_holo));
    nbops.push_back(to_string(quantize(fam.Nbar[static_cast<size_t>(a)], model).on_holo));
  }
  res.data["operator_N"] = nops;
  res.data["operator_Nbar"] = nbops;
  res.data["transfer_constant"] = to_string(hom.constant);
  return res;
}

inline Rat binomial_rat(int top, int bottom) {
  Rat r(1);
  for (int j = 0; j < bottom; ++j) r *= Rat(top - j, j + 1);
  return r;
}

inline SuiteResult spectrum_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "spectrum";
  auto p = cfg.params();
  Model model = Model::build(p);
  ObservableFamily fam = build_family(p);
  FockBasis basis(p, cfg.cutoff);
  SpectrumResult spec = spectrum(quantize(fam.H, model).on_holo, basis);

  bool ok = spec.exact && static_cast<int>(spec.items.size()) == cfg.cutoff + 1;
  if (ok) {
    for (int l = 0; l <= cfg.cutoff; ++l) {
      const auto& item = spec.items[static_cast<size_t>(l)];
      GaussRat expected(Rat(p->hbar() * (Rat(l) + Rat(p->n(), 2))));
      Rat mult = binomial_rat(l + p->n() - 1, p->n() - 1);
      if (!item.exact || item.value_exact != expected ||
          Rat(item.multiplicity) != mult)
        ok = false;
    }
  }
  res.add("spectrum of Q H is hbar(l + n/2) with monomial-count multiplicities", true, ok,
          spec.method);

  ojson eigs = ojson::array();
  for (const auto& item : spec.items) {
    ojson e;
    if (item.exact) e["value_exact"] = to_string(item.value_exact);
    e["value"] = round12(item.value.real());
    e["multiplicity"] = item.multiplicity;
    eigs.push_back(e);
  }
  res.data["operator"] = "H";
  res.data["eigenvalues"] = eigs;
  res.data["exact"] = spec.exact;
  return res;
}

inline SuiteResult gram_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "gram";
  auto p = cfg.params();
  if (p->n() > 2)
    throw std::domain_error("gram: radial quadrature is wired for n <= 2 (got n = " +
                            std::to_string(p->n()) + ")");
  FockBasis basis(p, cfg.cutoff);
  FockMeasure measure(p, cfg.measure);
  GramReport gram = monomial_norms(basis, measure);

  bool positive = true;
  double worst_rel = 0.0;
  bool any_oracle = false;
  for (size_t j = 0; j < basis.size(); ++j) {
    if (!(gram.norms[j] > 0.0)) positive = false;
    auto exact = measure.exact_norm_factor(basis.monomial(j));
    if (exact) {
      any_oracle = true;
      double oracle = std::pow(std::numbers::pi, p->n()) * to_double(*exact);
      worst_rel = std::max(worst_rel, std::abs(gram.norms[j] - oracle) / oracle);
    }
  }
  res.add("norms positive", false, positive);
  if (any_oracle)
    res.add("quadrature matches closed-form norms", false, worst_rel < cfg.tol, fmt12(worst_rel));
  res.add("gram matrix diagonal", false, gram.off_diagonal_max < cfg.tol,
          fmt12(gram.off_diagonal_max));

  Model model = Model::build(p);
  double inv = hermitian_invariance_check(model, cfg.samples, cfg.seed);
  res.add("hermitian structure invariance residual", false, inv < 1e-6, fmt12(inv));
  double corrupted = hermitian_invariance_check(model, cfg.samples, cfg.seed, 1);
  res.add("corrupted-weight control detected", false, corrupted > 1e-4, fmt12(corrupted));

  ojson norms = ojson::array();
  for (size_t j = 0; j < basis.size(); ++j) {
    ojson e;
    e["monomial"] = to_string(basis.monomial(j));
    e["norm"] = round12(gram.norms[j]);
    if (!gram.exact[j].empty()) e["exact"] = gram.exact[j];
    norms.push_back(e);
  }
  res.data["measure"] = to_string(cfg.measure);
  res.data["norms"] = norms;
  res.data["off_diagonal_max"] = round12(gram.off_diagonal_max);
  res.data["invariance_residual"] = round12(inv);
  return res;
}

inline SuiteResult adjoint_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "adjoint";
  auto p = cfg.params();
  if (p->n() > 2)
    throw std::domain_error("adjoint: radial quadrature is wired for n <= 2");
  Model model = Model::build(p);
  ObservableFamily fam = build_family(p);
  FockBasis basis(p, cfg.cutoff);
  OperatorMatrix lowering = to_matrix(quantize(fam.Nbar[0], model).on_holo, basis);
  OperatorMatrix raising = to_matrix(quantize(fam.N[0], model).on_holo, basis);

  FockMeasure corrected(p, MeasureMode::corrected);
  AdjointReport corr = adjointness_check(basis, corrected, lowering, raising);
  res.add("corrected measure: (Q Nbar)^dagger = Q N", false, corr.max_deviation < cfg.tol,
          fmt12(corr.max_deviation));

  res.data["corrected"] = {{"max_deviation", round12(corr.max_deviation)}};
  if (!p->flat()) {
    FockMeasure literal(p, MeasureMode::literal);
    if (literal.exponent() > -1) {
      AdjointReport lit = adjointness_check(basis, literal, lowering, raising);
      double hb = to_double(p->hbar());
      double gap = 0.0;
      for (double g : lit.raising_gap) gap = std::max(gap, g);
      bool gap_is_hbar = !lit.raising_gap.empty();
      for (double g : lit.raising_gap)
        if (std::abs(g - hb) > cfg.tol) gap_is_hbar = false;
      res.add("literal measure: raising-coefficient gap equals hbar", false, gap_is_hbar,
              fmt12(gap));
      res.data["literal"] = {{"max_deviation", round12(lit.max_deviation)},
                             {"raising_gap_max", round12(gap)}};
    } else {
      res.add("literal measure: not integrable for these parameters", false, true,
              "exponent " + to_string(literal.exponent()));
    }
  } else {
    res.add("flat model: measure modes coincide", false, true);
  }
  return res;
}

inline SampledCurve parse_curve_csv(std::istream& in, int n) {
  SampledCurve c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != 1 + 2 * n)
      throw std::invalid_argument("curve csv: expected 1 + 2n columns");
    c.times.push_back(row[0]);
    std::vector<std::complex<double>> pt;
    for (int j = 0; j < n; ++j)
      pt.emplace_back(row[static_cast<size_t>(1 + 2 * j)], row[static_cast<size_t>(2 + 2 * j)]);
    c.points.push_back(std::move(pt));
  }
  return c;
}

inline SuiteResult hproj_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "hproj";
  auto p = cfg.params();
  const int n = p->n();
  Model model = Model::build(p);

  auto [phi, flat_ok] = flatness_certificate(model.metric);
  {
    std::string phis;
    for (size_t j = 0; j < phi.size(); ++j)
      phis += (j ? "; " : "") + to_string(phi[j]);
    res.add("connection is of equivalent-to-flat form", true, flat_ok, phis);
    ojson comps = ojson::array();
    for (const auto& f : phi) comps.push_back(to_string(f));
    res.data["flatness"] = {{"certified", flat_ok}, {"phi", comps}};
  }

  // Pair against the flat chart metric.
  AMatrix flat_lower = amatrix(p);
  for (int a = 0; a < n; ++a) flat_lower[static_cast<size_t>(a)][static_cast<size_t>(a)] = AFrac::one(p);
  HprojPair pair{model.metric, metric_from_lower(p, flat_lower), 0};
  PairResidualReport pr = pair_residual(pair);
  if (n == 1) {
    res.add("mapping-equation residual vanishes identically (n=1)", true, pr.exact_zero);
  } else {
    res.add("mapping-equation obstruction computed (n >= 2)", true, true,
            pr.exact_zero ? "zero" : "nonzero, as expected for the flat pair");
  }
  res.data["pair_residual"] = {{"exact_zero", pr.exact_zero},
                               {"symmetrized_exact_zero", pr.sym_exact_zero},
                               {"phi_solved_closed", pr.phi_solved_closed}};

  if (n == 2) {
    std::vector<GaussRat> point = cfg.hproj_point;
    if (point.empty()) point = {GaussRat(rat(1, 2)), GaussRat(0)};
    if (static_cast<int>(point.size()) != n)
      throw std::domain_error("hproj: classification point has wrong dimension");
    LambdaClassification cls = classify_pencil(pair, point);
    res.add("pencil roots real at sample point", false, cls.max_imag < 1e-9,
            fmt12(cls.roots[0]) + ", " + fmt12(cls.roots[1]) + " (" + to_string(cls.case_tag) + ")");
    res.data["classification"] = {{"roots", {round12(cls.roots[0]), round12(cls.roots[1])}},
                                  {"case", to_string(cls.case_tag)}};
  }

  if (!cfg.curve_file.empty()) {
    std::ifstream in(cfg.curve_file);
    if (!in) throw std::domain_error("hproj: cannot open curve file " + cfg.curve_file);
    SampledCurve curve = parse_curve_csv(in, n);
    auto samples = hplanarity_residual(curve, model.metric);
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, s.residual);
    res.add("curve planarity residual", false, true,
            fmt12(worst) + (worst < cfg.tol ? " (h-planar within tol)" : " (not h-planar)"));
    res.data["curve"] = {{"max_residual", round12(worst)},
                         {"samples", static_cast<int>(samples.size())}};
  }
  return res;
}

// ---------------------------------------------------------------------------
// driver

inline Report run(const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.config = cfg;
  const std::vector<std::string> order = {"geometry", "algebra", "operators", "spectrum",
                                          "gram",     "adjoint", "hproj"};
  for (const auto& name : order) {
    bool selected = false;
    for (const auto& s : cfg.suites) selected = selected || s == name;
    if (!selected) continue;
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    if (name == "geometry") res = geometry_suite(cfg);
    else if (name == "algebra") res = algebra_suite(cfg);
    else if (name == "operators") res = operators_suite(cfg);
    else if (name == "spectrum") res = spectrum_suite(cfg);
    else if (name == "gram") res = gram_suite(cfg);
    else if (name == "adjoint") res = adjoint_suite(cfg);
    else res = hproj_suite(cfg);
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.suites.push_back(std::move(res));
  }
  return rep;
}

inline ojson report_to_json(const Report& rep) {
  ojson j;
  j["schema_version"] = 1;
  ojson cfg;
  cfg["n"] = rep.config.n;
  cfg["k"] = to_string(rep.config.k);
  cfg["hbar"] = to_string(rep.config.hbar);
  cfg["cutoff"] = rep.config.cutoff;
  cfg["measure"] = to_string(rep.config.measure);
  cfg["tol"] = round12(rep.config.tol);
  cfg["seed"] = rep.config.seed;
  cfg["samples"] = rep.config.samples;
  ojson names = ojson::array();
  for (const auto& s : rep.config.suites) names.push_back(s);
  cfg["suites"] = names;
  j["config"] = cfg;
  ojson suites;
  for (const auto& s : rep.suites) {
    ojson sj = s.data;
    ojson lines = ojson::array();
    for (const auto& l : s.lines) {
      ojson lj;
      lj["name"] = l.name;
      lj["kind"] = l.exact ? "exact" : "numeric";
      lj["pass"] = l.pass;
      if (!l.value.empty()) lj["value"] = l.value;
      lines.push_back(lj);
    }
    sj["lines"] = lines;
    sj["pass"] = s.pass;
    suites[s.name] = sj;
  }
  j["suites"] = suites;
  int pass = 0, fail = 0;
  for (const auto& s : rep.suites)
    for (const auto& l : s.lines) (l.pass ? pass : fail) += 1;
  j["summary"] = {{"lines_pass", pass}, {"lines_fail", fail}, {"exit_code", rep.exit_code()}};
  return j;
}

inline Report report_from_json(const ojson& j) {
  Report rep;
  const auto& cfg = j.at("config");
  rep.config.n = cfg.at("n").get<int>();
  rep.config.k = rat_from_string(cfg.at("k").get<std::string>());
  rep.config.hbar = rat_from_string(cfg.at("hbar").get<std::string>());
  rep.config.cutoff = cfg.at("cutoff").get<int>();
  rep.config.measure = cfg.at("measure").get<std::string>() == "literal" ? MeasureMode::literal
                                                                         : MeasureMode::corrected;
  rep.config.tol = cfg.at("tol").get<double>();
  rep.config.seed = cfg.at("seed").get<std::uint64_t>();
  rep.config.samples = cfg.at("samples").get<int>();
  for (const auto& s : cfg.at("suites")) rep.config.suites.push_back(s.get<std::string>());
  for (const auto& [name, sj] : j.at("suites").items()) {
    SuiteResult s;
    s.name = name;
    s.pass = sj.at("pass").get<bool>();
    for (const auto& lj : sj.at("lines")) {
      ReportLine l;
      l.name = lj.at("name").get<std::string>();
      l.exact = lj.at("kind").get<std::string>() == "exact";
      l.pass = lj.at("pass").get<bool>();
      if (lj.contains("value")) l.value = lj.at("value").get<std::string>();
      s.lines.push_back(std::move(l));
    }
    s.data = sj;
    s.data.erase("lines");
    s.data.erase("pass");
    rep.suites.push_back(std::move(s));
  }
  return rep;
}

inline std::string emit(const Report& rep, const std::string& format) {
  if (format == "json") return report_to_json(rep).dump(2) + "\n";
  if (format == "csv") {
    auto esc = [](const std::string& s) {
      if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
      std::string out = "\"";
      for (char c : s) {
        if (c == '"') out += '"';
        out += c;
      }
      return out + "\"";
    };
    std::ostringstream os;
    for (const auto& s : rep.suites) {
      if (s.name == "spectrum") {
        os << "l,exact,float,multiplicity\n";
        int l = 0;
        for (const auto& e : s.data.at("eigenvalues")) {
          os << l++ << "," << (e.contains("value_exact") ? e.at("value_exact").get<std::string>() : "")
             << "," << fmt12(e.at("value").get<double>()) << "," << e.at("multiplicity").get<int>()
             << "\n";
        }
        continue;
      }
      os << "suite,line,kind,pass,value\n";
      for (const auto& l : s.lines)
        os << s.name << "," << esc(l.name) << "," << (l.exact ? "exact" : "numeric") << ","
           << (l.pass ? 1 : 0) << "," << esc(l.value) << "\n";
    }
    return os.str();
  }
  // text
  std::ostringstream os;
  os << "model: n=" << rep.config.n << " k=" << to_string(rep.config.k)
     << " hbar=" << to_string(rep.config.hbar) << " cutoff=" << rep.config.cutoff
     << " measure=" << to_string(rep.config.measure) << "\n";
  for (const auto& s : rep.suites) {
    os << "== " << s.name << " (" << fmt12(s.seconds) << "s) "
       << (s.pass ? "ok" : "FAILED") << "\n";
    for (const auto& l : s.lines) {
      os << "  [" << (l.exact ? "exact " : "numeric") << "] " << (l.pass ? "pass" : "FAIL") << "  "
         << l.name;
      if (!l.value.empty()) os << "  = " << l.value;
      os << "\n";
    }
    if (s.name == "algebra")
      os << "  dimension computed " << s.data.at("dimension_computed").get<int>()
         << " vs claimed " << s.data.at("dimension_paper_claim").get<int>() << "\n";
  }
  os << "exit code " << rep.exit_code() << "\n";
  return os.str();
}

}  // namespace kq
