#include "liegraph/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liegraph/sym_eigen.hpp"

namespace liegraph {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string input_digest(const Graph& g) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(to_edge_list_text(g))));
  return buf;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t res = 1;
    a %= m;
    while (e) {
      if (e & 1) res = mulmod(res, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return res;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

FieldSpec parse_field(const std::string& tag) {
  if (tag == "q") return {"q", 0};
  if (tag == "f2") return {"f2", 2};
  if (tag.rfind("fp:", 0) == 0) {
    std::uint64_t p;
    try {
      p = std::stoull(tag.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field tag '" + tag + "'");
    }
    if (p > ((1ULL << 61) - 1)) throw std::invalid_argument("prime-field modulus exceeds 2^61-1");
    if (!is_prime_u64(p)) throw std::invalid_argument("prime-field modulus must be prime");
    return {tag, p};
  }
  throw std::invalid_argument("unknown field tag '" + tag + "' (expected q | f2 | fp:P)");
}

namespace {

json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [i, j] : edges) a.push_back(json::array({i, j}));
  return a;
}

json coherence_json(const Graph& g, SimilarityRule rule) {
  CoherenceGraph cg = coherence_graph(g, rule);
  json j;
  j["components"] = cg.components;
  json ce = json::array();
  for (const auto& [a, b] : cg.comp_edges) ce.push_back(json::array({a, b}));
  j["component_edges"] = ce;
  j["component_complete"] = cg.comp_complete;
  j["all_components_complete"] = cg.all_components_complete();
  return j;
}

}  // namespace

json graph_section(const Graph& g, int k) {
  CliqueSet cs = enumerate_k_cliques(g, k);
  GraphDecomposition dec = decompose(g, cs);
  json j;
  j["n"] = g.n;
  j["edge_count"] = g.edges.size();
  j["edges"] = edges_json(g.edges);
  if (g.weights) {
    json w = json::array();
    for (const auto& x : *g.weights) w.push_back(scalar_str(x));
    j["weights"] = w;
  }
  int isolated = 0;
  for (int v = 1; v <= g.n; ++v)
    if (g.degree(v) == 0) ++isolated;
  j["isolated_count"] = isolated;
  j["clique_k"] = k;
  j["clique_count"] = cs.size();
  j["cliques"] = cs.cliques;
  j["decomposition"] = {{"v_delta", dec.v_delta},
                        {"v_gamma", dec.v_gamma},
                        {"e_delta", edges_json(dec.e_delta)},
                        {"e_gamma", edges_json(dec.e_gamma)},
                        {"e_delta_gamma", edges_json(dec.e_delta_gamma)}};
  j["every_vertex_in_clique"] = every_vertex_in_clique(g, cs);
  // Both similarity readings are reported side by side; the closed rule is
  // the default elsewhere.
  j["coherence"] = {{"closed", coherence_json(g, SimilarityRule::Closed)},
                    {"open", coherence_json(g, SimilarityRule::Open)}};
  return j;
}

json fingerprint_json(const Fingerprint& f) {
  json j;
  j["n_isolated"] = f.n_isolated;
  j["dim_v"] = f.dim_v;
  j["dim_w"] = f.dim_w;
  j["dim_u"] = f.dim_u;
  j["dim_derived"] = f.dim_derived;
  j["dim_derived2"] = f.dim_derived2;
  j["dim_derived3"] = f.dim_derived3;
  j["dim_lcs_stable"] = f.dim_lcs_stable;
  j["dim_center"] = f.dim_center;
  j["dim_nilradical"] = f.dim_nilradical;
  j["dim_derivations"] = f.dim_derivations;
  json profiles = json::array();
  for (const auto& p : f.clique_profiles) {
    json prof = json::array();
    for (const auto& [val, mult] : p.eigen_multiplicities) prof.push_back(json::array({val, mult}));
    profiles.push_back(prof);
  }
  j["clique_adjoint_profiles"] = profiles;
  return j;
}

namespace {

template <class K>
json algebra_section_typed(const Graph& g, int k, const FieldSpec& field,
                           std::optional<std::vector<K>> weights) {
  GraphLieAlgebra<K> alg = GraphLieAlgebra<K>::build(g, k, std::move(weights));
  json j;
  j["graph"] = {{"n", g.n}, {"edge_count", g.edges.size()}};
  j["k"] = k;
  j["field"] = field.tag;
  json w = json::array();
  for (const auto& x : alg.weights()) w.push_back(scalar_str(x));
  j["weights"] = w;
  j["dims"] = {{"V", alg.dim_v()}, {"W", alg.dim_w()}, {"U", alg.dim_u()}};

  json warnings = json::array();
  JacobiReport<K> jac = alg.verify_jacobi();
  j["jacobi_verified"] = jac.ok;

  std::vector<int> d_dims, l_dims;
  for (const auto& s : alg.derived_series()) d_dims.push_back(s.dim());
  for (const auto& s : alg.lower_central_series()) l_dims.push_back(s.dim());
  j["series"] = {{"derived", d_dims}, {"lower_central", l_dims}};
  j["series_closed_form_verified"] = alg.verify_series_closed_form();
  j["nilpotent"] = !d_dims.empty() && alg.dim_u() == 0;

  Subspace<K> oracle = alg.center_oracle();
  j["center_dim"] = oracle.dim();
  try {
    Subspace<K> formula = alg.center_formula();
    j["center_formula_dim"] = formula.dim();
    j["center_formula_matches_oracle"] = formula == oracle;
  } catch (const PreconditionError& e) {
    warnings.push_back(std::string("center_formula: ") + e.what());
    j["center_formula_dim"] = nullptr;
  }
  try {
    j["nilradical_dim"] = alg.nilradical().dim();
  } catch (const PreconditionError& e) {
    warnings.push_back(std::string("nilradical: ") + e.what());
    j["nilradical_dim"] = nullptr;
  }
  try {
    j["fingerprint"] = fingerprint_json(alg.fingerprint());
  } catch (const PreconditionError& e) {
    warnings.push_back(std::string("fingerprint: ") + e.what());
    j["fingerprint"] = nullptr;
  }
  j["completely_solvable"] = alg.completely_solvable_check();
  j["warnings"] = warnings;
  return j;
}

}  // namespace

json algebra_section(const Graph& g, int k, const FieldSpec& field) {
  if (field.modulus == 0) return algebra_section_typed<Rational>(g, k, field, std::nullopt);
  std::optional<std::vector<Fp>> weights;
  weights.emplace();
  for (int v = 1; v <= g.n; ++v)
    weights->push_back(g.weights ? fp_from_rational((*g.weights)[v - 1], field.modulus)
                                 : Fp::make(1, field.modulus));
  return algebra_section_typed<Fp>(g, k, field, std::move(weights));
}

json matrix_json(const Matrix<Rational>& m, const std::string& field_tag) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["field"] = field_tag;
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!is_zero(m.at(r, c))) entries.push_back(json::array({r, c, scalar_str(m.at(r, c))}));
  j["entries"] = entries;
  return j;
}

namespace {

// eigenvalues of the g-self-adjoint operator with bilinear form `form`:
// solve form v = lambda g v via a double Cholesky of g.
std::vector<double> pencil_spectrum(const Matrix<Rational>& form, const Matrix<Rational>& g) {
  int n = form.rows();
  if (n == 0) return {};
  std::vector<double> gm(static_cast<std::size_t>(n) * n), fm(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      gm[r * n + c] = to_double(g.at(r, c));
      fm[r * n + c] = to_double(form.at(r, c));
    }
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = gm[i * n + j];
      for (int k = 0; k < j; ++k) acc -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (acc <= 0) throw std::invalid_argument("metric Gram matrix is not positive definite");
        l[i * n + i] = std::sqrt(acc);
      } else {
        l[i * n + j] = acc / l[j * n + j];
      }
    }
  std::vector<double> tmp = fm;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      double acc = tmp[r * n + c];
      for (int k = 0; k < r; ++k) acc -= l[r * n + k] * tmp[k * n + c];
      tmp[r * n + c] = acc / l[r * n + r];
    }
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double acc = tmp[r * n + c];
      for (int k = 0; k < c; ++k) acc -= b[r * n + k] * l[c * n + k];
      b[r * n + c] = acc / l[c * n + c];
    }
  return sym_eigen(b, n, 1e-6).values;
}

json float_list(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(fmt17(x));
  return a;
}

}  // namespace

json metric_section(const GraphLieAlgebra<Rational>& alg, const MetricTensor& metric,
                    int trials, std::uint64_t seed) {
  json j;
  LieAlgebraValue val = LieAlgebraValue::from_graph_algebra(alg);
  bool hyp = every_vertex_in_clique(alg.graph(), alg.cliques());
  j["every_vertex_in_clique"] = hyp;

  // Iwasawa conditions: on g itself when ker A = 0, else on g1.
  Matrix<Rational> ka = kernel(alg.clique_incidence_matrix());
  json iw;
  if (ka.rows() == 0 || !hyp) {
    IwasawaReport rep = iwasawa_check(val, metric, b0_candidate(alg));
    iw = {{"applied_to", "g"}, {"a", rep.a}, {"b", rep.b}, {"c", rep.c},
          {"b0_in_complement", rep.b0_in_complement}};
  } else {
    SplitG1G2 sp = split_g1_g2(alg, metric);
    std::vector<Rational> b0 = sp.g1.coordinates(b0_candidate(alg));
    IwasawaReport rep = iwasawa_check(sp.g1_algebra, sp.g1_metric, b0);
    iw = {{"applied_to", "g1"}, {"a", rep.a}, {"b", rep.b}, {"c", rep.c},
          {"b0_in_complement", rep.b0_in_complement}};
  }
  j["iwasawa"] = iw;

  Matrix<Rational> ric = ricci_exact(val, metric);
  json ricj;
  ricj["matrix"] = matrix_json(ric, "q");
  ricj["spectrum"] = float_list(pencil_spectrum(ric, metric.g()));
  j["ricci"] = ricj;

  if (alg.dim() <= 40) {
    CurvatureData cd = curvature(val, metric);
    OperatorSpectrum sp = curvature_operator_spectrum(cd);
    j["curvature_operator"] = {{"max_eig", fmt17(sp.max_eigenvalue)},
                               {"nonpositive", sp.nonpositive},
                               {"boundary", sp.boundary},
                               {"identities_verified", verify_curvature_identities(cd)}};
  } else {
    j["curvature_operator"] = {{"skipped", "dimension exceeds the dense curvature guard (40)"}};
  }

  SolitonCertificate cert = soliton_check(val, metric);
  j["soliton"] = {{"found", cert.found && cert.is_derivation},
                  {"c", cert.found ? json(scalar_str(cert.c)) : json(nullptr)},
                  {"residual", fmt17(cert.residual)}};

  if (hyp) {
    SplitG1G2 sp = split_g1_g2(alg, metric);
    j["split"] = {{"dim_g1", sp.g1.dim()}, {"dim_g2", sp.g2.dim()}};
  } else {
    j["split"] = {{"refused", "every_vertex_in_clique fails"}};
  }

  if (trials > 0) {
    if (hyp) {
      StablyRicciDiagonalReport rep = stably_ricci_diagonal_test(alg, trials, seed);
      j["stably_ricci_diagonal"] = {{"trials", rep.trials},
                                    {"all_diagonal", rep.all_diagonal},
                                    {"max_offdiag", fmt17(rep.max_offdiag)},
                                    {"max_offdiag_exact", rep.max_offdiag_exact}};
    } else {
      j["stably_ricci_diagonal"] = {{"refused", "every_vertex_in_clique fails"}};
    }
  }
  return j;
}

json soliton_section(const GraphLieAlgebra<Rational>& alg, int iters, double tol,
                     std::uint64_t seed) {
  json j;
  bool hyp = every_vertex_in_clique(alg.graph(), alg.cliques());
  if (!hyp) {
    j["refused"] = "every_vertex_in_clique fails";
    j["found"] = false;
    return j;
  }
  SolitonSearchResult res = soliton_search_diagonal(alg, iters, tol, seed);
  j["found"] = res.reached_tol;
  j["residual"] = fmt17(res.residual);
  j["iterations"] = res.iterations;
  j["tol"] = fmt17(tol);
  j["best_metric_diag"] = float_list(res.best_diag);
  j["residual_trace"] = float_list(res.history);
  if (res.certificate) {
    const SolitonCertificate& c = *res.certificate;
    json cj;
    cj["verified"] = c.found && c.is_derivation;
    cj["c"] = c.found ? json(scalar_str(c.c)) : json(nullptr);
    cj["residual"] = fmt17(c.residual);
    if (res.certified_metric) {
      json d = json::array();
      for (int i = 0; i < res.certified_metric->dim(); ++i)
        d.push_back(scalar_str(res.certified_metric->g().at(i, i)));
      cj["metric_diag"] = d;
    }
    j["certificate"] = cj;
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

json comparison_section(const Graph& a, const Graph& b, int max_n) {
  if (a.n > max_n || b.n > max_n)
    throw std::invalid_argument("compare: graph exceeds --max-n = " + std::to_string(max_n));
  json j;
  CanonicalForm ca = canonical_form(a, max_n);
  CanonicalForm cb = canonical_form(b, max_n);
  bool iso = a.n == b.n && ca.edges == cb.edges;
  j["graphs_isomorphic"] = iso;

  GraphLieAlgebra<Rational> alg_a = GraphLieAlgebra<Rational>::build(a, 3);
  GraphLieAlgebra<Rational> alg_b = GraphLieAlgebra<Rational>::build(b, 3);
  Fingerprint fa = alg_a.fingerprint();
  Fingerprint fb = alg_b.fingerprint();
  bool fp_equal = fa == fb;
  j["fingerprints_equal"] = fp_equal;
  j["fingerprint_a"] = fingerprint_json(fa);
  j["fingerprint_b"] = fingerprint_json(fb);

  if (iso) {
    // witness sigma: a-vertex v -> b-vertex with the same canonical label
    std::vector<int> inv_b(b.n + 1, 0);
    for (int w = 1; w <= b.n; ++w) inv_b[cb.labeling[w - 1]] = w;
    std::vector<int> sigma(a.n);
    for (int v = 1; v <= a.n; ++v) sigma[v - 1] = inv_b[ca.labeling[v - 1]];
    IsomorphismResult<Rational> res = isomorphism_from_permutation(alg_a, alg_b, sigma);
    j["witness_permutation"] = sigma;
    j["algebra_isomorphism_verified"] = res.ok;
    if (!res.ok) throw InternalError("internal consistency: canonical witness failed to verify: " + res.witness);
    if (!fp_equal)
      throw InternalError("internal consistency: isomorphic graphs with distinct fingerprints");
  } else {
    j["witness_permutation"] = nullptr;
    j["algebra_isomorphism_verified"] = false;
    if (fp_equal) j["note"] = "fingerprint collision: non-isomorphic graphs share all invariants";
  }
  return j;
}

json report_shell(const std::string& command, const std::string& digest) {
  json j;
  j["version"] = LIEGRAPH_VERSION;
  j["command"] = command;
  j["input_digest"] = digest;
  return j;
}

namespace {

Rational scalar_from_json(const json& v) {
  if (v.is_string()) return rat_from_decimal(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return rat_from_decimal(fmt17(v.get<double>()));
  throw std::invalid_argument("bad metric entry");
}

}  // namespace

MetricTensor parse_metric_json(const json& j, int dim) {
  if (j.contains("diag")) {
    std::vector<Rational> d;
    for (const auto& v : j["diag"]) d.push_back(scalar_from_json(v));
    if (static_cast<int>(d.size()) != dim)
      throw std::invalid_argument("metric diagonal length " + std::to_string(d.size()) +
                                  " does not match the algebra dimension " + std::to_string(dim));
    return MetricTensor::diagonal(d);
  }
  if (j.contains("matrix")) {
    const json& rows = j["matrix"];
    if (static_cast<int>(rows.size()) != dim)
      throw std::invalid_argument("metric matrix size does not match the algebra dimension");
    Matrix<Rational> m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      if (static_cast<int>(rows[r].size()) != dim) throw std::invalid_argument("ragged metric matrix");
      for (int c = 0; c < dim; ++c) m.at(r, c) = scalar_from_json(rows[r][c]);
    }
    return MetricTensor::dense(m);
  }
  throw std::invalid_argument("metric file must contain 'diag' or 'matrix'");
}

MetricTensor parse_metric_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open metric file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("metric file parse error: ") + e.what());
  }
  return parse_metric_json(j, dim);
}

MetricTensor parse_diag_spec(const std::string& comma_list, int dim) {
  std::vector<Rational> d;
  std::stringstream ss(comma_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) d.push_back(rat_from_decimal(tok));
  }
  if (static_cast<int>(d.size()) != dim)
    throw std::invalid_argument("--diag expects " + std::to_string(dim) + " entries, got " +
                                std::to_string(d.size()));
  return MetricTensor::diagonal(d);
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

std::string pretty_summary(const json& report) {
  std::ostringstream out;
  auto line = [&](const std::string& k, const std::string& v) {
    out << "  " << k;
    for (std::size_t i = k.size(); i < 28; ++i) out << ' ';
    out << v << "\n";
  };
  out << "liegraph " << report.value("version", "?") << " — " << report.value("command", "?") << "\n";
  line("input digest", report.value("input_digest", ""));
  if (report.contains("graph")) {
    const json& g = report["graph"];
    line("vertices / edges", std::to_string(g.value("n", 0)) + " / " + std::to_string(g.value("edge_count", 0)));
    line("k-cliques (k=" + std::to_string(g.value("clique_k", 3)) + ")", std::to_string(g.value("clique_count", 0)));
    line("every vertex in clique", g.value("every_vertex_in_clique", false) ? "yes" : "no");
  }
  if (report.contains("algebra") && report["algebra"].is_object()) {
    const json& a = report["algebra"];
    if (a.contains("dims"))
      line("dim g = V+W+U",
           std::to_string(a["dims"].value("V", 0) + a["dims"].value("W", 0) + a["dims"].value("U", 0)));
    if (a.contains("center_dim") && a["center_dim"].is_number())
      line("dim center", std::to_string(a["center_dim"].get<int>()));
    if (a.contains("nilradical_dim") && a["nilradical_dim"].is_number())
      line("dim nilradical", std::to_string(a["nilradical_dim"].get<int>()));
    line("jacobi verified", a.value("jacobi_verified", false) ? "yes" : "no");
  }
  if (report.contains("metric") && report["metric"].is_object()) {
    const json& m = report["metric"];
    if (m.contains("iwasawa") && m["iwasawa"].contains("a")) {
      const json& iw = m["iwasawa"];
      line("iwasawa (a,b,c)", std::string(iw.value("a", false) ? "T" : "F") + "," +
                                  (iw.value("b", false) ? "T" : "F") + "," +
                                  (iw.value("c", false) ? "T" : "F"));
    }
    if (m.contains("curvature_operator") && m["curvature_operator"].contains("max_eig")) {
      line("curv. op. max eig", m["curvature_operator"]["max_eig"].get<std::string>());
      line("curv. op. nonpositive", m["curvature_operator"].value("nonpositive", false) ? "yes" : "no");
    }
    if (m.contains("soliton"))
      line("soliton (this metric)", m["soliton"].value("found", false) ? "yes" : "no");
  }
  if (report.contains("soliton") && report["soliton"].is_object()) {
    const json& s = report["soliton"];
    line("soliton found", s.value("found", false) ? "yes" : "no");
    if (s.contains("residual") && s["residual"].is_string()) line("residual", s["residual"].get<std::string>());
    if (s.contains("certificate") && s["certificate"].is_object())
      line("exact certificate", s["certificate"].value("verified", false) ? "yes" : "no");
  }
  if (report.contains("comparison")) {
    const json& c = report["comparison"];
    line("graphs isomorphic", c.value("graphs_isomorphic", false) ? "yes" : "no");
    line("fingerprints equal", c.value("fingerprints_equal", false) ? "yes" : "no");
  }
  return out.str();
}

}  // namespace liegraph
