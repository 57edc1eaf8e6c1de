#include "liegraph/soliton.hpp"

#include <algorithm>
#include <cmath>

namespace liegraph {

namespace {

std::vector<Rational> flatten(const Matrix<Rational>& m) {
  std::vector<Rational> v(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(r) * m.cols() + c] = m.at(r, c);
  return v;
}

}  // namespace

SolitonCertificate soliton_check(const LieAlgebraValue& alg, const MetricTensor& metric) {
  int n = alg.dim();
  SolitonCertificate cert;
  cert.metric = metric;
  Matrix<Rational> ric_op = ricci_operator(alg, metric);
  std::vector<Rational> ric_flat = flatten(ric_op);

  Subspace<Rational> der = alg.derivation_space();
  int nb = der.dim();
  Matrix<Rational> a(n * n, nb + 1);  // columns: derivation basis, then Id
  for (int k = 0; k < nb; ++k) {
    std::vector<Rational> v = der.basis_vector(k);
    for (int i = 0; i < n * n; ++i) a.at(i, k) = v[i];
  }
  for (int i = 0; i < n; ++i) a.at(i * n + i, nb) = Rational(1);

  LinearSolution<Rational> sol = solve(a, ric_flat);
  if (sol.consistent) {
    cert.found = true;
    cert.c = sol.particular[nb];
    cert.derivation = ric_op;
    for (int i = 0; i < n; ++i) cert.derivation.at(i, i) -= cert.c;
    cert.is_derivation = alg.is_derivation(cert.derivation);
    cert.residual = 0.0;
    return cert;
  }

  // least squares: project onto span(columns of a)
  Matrix<Rational> at = a.transposed();
  Matrix<Rational> gram = at * a;
  std::vector<Rational> rhs = at.apply(ric_flat);
  LinearSolution<Rational> ls = solve(gram, rhs);
  if (ls.consistent) {
    std::vector<Rational> proj = a.apply(ls.particular);
    Rational r2(0);
    for (int i = 0; i < n * n; ++i) {
      Rational d = ric_flat[i] - proj[i];
      r2 += d * d;
    }
    cert.residual = std::sqrt(to_double(r2));
    cert.c = ls.particular[nb];
  }
  return cert;
}

std::optional<MetricTensor> exact_diagonal_soliton(const GraphLieAlgebra<Rational>& alg,
                                                   const std::vector<double>* hint_diag) {
  if (!alg.unit_weights()) return std::nullopt;
  if (!every_vertex_in_clique(alg.graph(), alg.cliques())) return std::nullopt;
  const Graph& g = alg.graph();
  const auto& cliques = alg.cliques().cliques;
  int nv = g.n;
  int ne = static_cast<int>(g.edges.size());
  int nc = static_cast<int>(cliques.size());
  if (nc == 0) return std::nullopt;

  // variables: x_T (nc), y_e (ne), c, d_i (nv)
  int nvars = nc + ne + 1 + nv;
  int col_c = nc + ne;
  auto col_x = [&](int t) { return t; };
  auto col_y = [&](int e) { return nc + e; };
  auto col_d = [&](int i) { return nc + ne + 1 + i; };  // i is 0-based vertex

  // overlap weight of edge e with clique T and the adjoint trace constants
  auto wTe = [&](int t, int e) {
    int w = 0;
    if (std::binary_search(cliques[t].begin(), cliques[t].end(), g.edges[e].first)) ++w;
    if (std::binary_search(cliques[t].begin(), cliques[t].end(), g.edges[e].second)) ++w;
    return w;
  };
  std::vector<Rational> k_t(nc, Rational(0)), k2_t(nc, Rational(0));
  for (int t = 0; t < nc; ++t) {
    int kk = static_cast<int>(cliques[t].size());
    int s = 0, s2 = 0;
    for (int e = 0; e < ne; ++e) {
      int w = wTe(t, e);
      s += w;
      s2 += w * w;
    }
    k_t[t] = Rational(kk + s);    // -tr(ad_{u_T})
    k2_t[t] = Rational(kk + s2);  // tr(ad_{u_T}^2)
  }

  std::vector<std::vector<Rational>> rows;
  // vertex a: -1/2 sum_{e at a} y_e - sum_{T in a} K_T x_T = c + d_a
  for (int a = 1; a <= nv; ++a) {
    std::vector<Rational> row(nvars, Rational(0));
    for (int e = 0; e < ne; ++e)
      if (g.edges[e].first == a || g.edges[e].second == a)
        row[col_y(e)] = Rational(-1) / Rational(2);
    for (int t = 0; t < nc; ++t)
      if (std::binary_search(cliques[t].begin(), cliques[t].end(), a)) row[col_x(t)] = -k_t[t];
    row[col_c] = Rational(-1);
    row[col_d(a - 1)] = Rational(-1);
    rows.push_back(std::move(row));
  }
  // edge e=(a,b): 1/2 y_e - sum_T K_T w_T(e) x_T = c + d_a + d_b
  for (int e = 0; e < ne; ++e) {
    std::vector<Rational> row(nvars, Rational(0));
    row[col_y(e)] = Rational(1) / Rational(2);
    for (int t = 0; t < nc; ++t) {
      int w = wTe(t, e);
      if (w) row[col_x(t)] = -k_t[t] * Rational(w);
    }
    row[col_c] = Rational(-1);
    row[col_d(g.edges[e].first - 1)] = Rational(-1);
    row[col_d(g.edges[e].second - 1)] = Rational(-1);
    rows.push_back(std::move(row));
  }
  // clique T: -(k + sum w^2) x_T = c
  for (int t = 0; t < nc; ++t) {
    std::vector<Rational> row(nvars, Rational(0));
    row[col_x(t)] = -k2_t[t];
    row[col_c] = Rational(-1);
    rows.push_back(std::move(row));
  }

  Matrix<Rational> sys(static_cast<int>(rows.size()), nvars);
  for (int i = 0; i < sys.rows(); ++i) sys.set_row(i, rows[i]);
  Matrix<Rational> ker = kernel(sys);
  if (ker.rows() == 0) return std::nullopt;

  auto positive = [&](const std::vector<Rational>& v) {
    for (int i = 0; i < nc + ne; ++i)
      if (!(v[i] > 0)) return false;
    return true;
  };

  std::vector<std::vector<Rational>> candidates;
  if (hint_diag && static_cast<int>(hint_diag->size()) == alg.dim()) {
    // project the numeric optimum onto the solution space
    std::vector<Rational> target(nvars, Rational(0));
    for (int t = 0; t < nc; ++t)
      target[col_x(t)] = rational_approx(1.0 / (*hint_diag)[alg.dim_v() + alg.dim_w() + t], 1000000);
    for (int e = 0; e < ne; ++e) {
      double ga = (*hint_diag)[g.edges[e].first - 1];
      double gb = (*hint_diag)[g.edges[e].second - 1];
      target[col_y(e)] = rational_approx((*hint_diag)[nv + e] / (ga * gb), 1000000);
    }
    Matrix<Rational> kt = ker.transposed();
    Matrix<Rational> gram = ker * kt;
    LinearSolution<Rational> ls = solve(gram, ker.apply(target));
    if (ls.consistent) candidates.push_back(kt.apply(ls.particular));
  }
  {
    std::vector<Rational> s(nvars, Rational(0));
    for (int r = 0; r < ker.rows(); ++r) add_scaled(s, ker.row(r), Rational(1));
    candidates.push_back(s);
  }
  for (int r = 0; r < ker.rows(); ++r) {
    candidates.push_back(ker.row(r));
    candidates.push_back(scaled_vec(ker.row(r), Rational(-1)));
  }

  LieAlgebraValue val = LieAlgebraValue::from_graph_algebra(alg);
  for (std::vector<Rational> v : candidates) {
    if (!positive(v)) continue;
    // scaling stays inside the solution space; normalize x_0 = 1
    Rational scale = v[col_x(0)];
    for (auto& x : v) x /= scale;
    std::vector<Rational> diag(alg.dim(), Rational(1));
    for (int e = 0; e < ne; ++e) diag[nv + e] = v[col_y(e)];
    for (int t = 0; t < nc; ++t) diag[nv + ne + t] = Rational(1) / v[col_x(t)];
    MetricTensor metric = MetricTensor::diagonal(diag);
    SolitonCertificate cert = soliton_check(val, metric);
    if (cert.found && cert.is_derivation) return metric;
  }
  return std::nullopt;
}

std::vector<double> numeric_ricci_operator_diag(const GraphLieAlgebra<Rational>& alg,
                                                const std::vector<double>& diag) {
  int n = alg.dim();
  // adcol[x][i] = (target, coeff) of [E_x, E_i] in the orthonormal frame
  std::vector<std::vector<std::pair<int, double>>> adcol(n,
      std::vector<std::pair<int, double>>(n, {-1, 0.0}));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto [t, c] = alg.bracket_basis(a, b);
      if (t < 0 || is_zero(c)) continue;
      double v = to_double(c) * std::sqrt(diag[t] / (diag[a] * diag[b]));
      adcol[a][b] = {t, v};
      adcol[b][a] = {t, -v};
    }

  std::vector<double> ric(static_cast<std::size_t>(n) * n, 0.0);
  // M1(x,y) = -1/2 sum_i <[x,Ei],[y,Ei]>, M2 diag += 1/2 c^2 per unordered pair
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto& [t1, v1] = adcol[x][i];
        const auto& [t2, v2] = adcol[y][i];
        if (t1 >= 0 && t1 == t2) s += v1 * v2;
      }
      ric[x * n + y] -= 0.5 * s;
      if (x != y) ric[y * n + x] -= 0.5 * s;
    }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const auto& [t, v] = adcol[a][b];
      if (t >= 0) ric[t * n + t] += 0.5 * v * v;
    }
  // -1/2 B with B(x,y) = tr(ad_x ad_y)
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto& [t, v] = adcol[y][i];
        if (t < 0) continue;
        const auto& [t2, v2] = adcol[x][t];
        if (t2 == i) s += v * v2;
      }
      ric[x * n + y] -= 0.5 * s;
      if (x != y) ric[y * n + x] -= 0.5 * s;
    }
  // -S(ad_H): H = sum tr(ad_x) E_x in the orthonormal frame
  std::vector<double> h(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < n; ++i) {
      const auto& [t, v] = adcol[x][i];
      if (t == i) h[x] += v;
    }
  std::vector<double> adh(static_cast<std::size_t>(n) * n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (h[x] == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const auto& [t, v] = adcol[x][i];
      if (t >= 0) adh[t * n + i] += h[x] * v;
    }
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) ric[r * n + c] -= 0.5 * (adh[r * n + c] + adh[c * n + r]);

  // back to the original basis: R_orig = D^{-1/2} R_ortho D^{1/2}
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out[r * n + c] = ric[r * n + c] * std::sqrt(diag[c] / diag[r]);
  return out;
}

Rational rational_approx(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  bool neg = x < 0;
  double v = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 1e17) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 <= 0) return Rational(0);
  Rational r = Rational(p1) / Rational(q1);
  return neg ? -r : r;
}

namespace {

struct ResidualEvaluator {
  const GraphLieAlgebra<Rational>& alg;
  std::vector<std::vector<double>> qbasis;  // orthonormal basis of span{Id} + Der

  explicit ResidualEvaluator(const GraphLieAlgebra<Rational>& a) : alg(a) {
    int n = alg.dim();
    std::vector<std::vector<double>> raw;
    std::vector<double> id(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) id[i * n + i] = 1.0;
    raw.push_back(std::move(id));
    Subspace<Rational> der = alg.derivation_space();
    for (int k = 0; k < der.dim(); ++k) {
      std::vector<Rational> v = der.basis_vector(k);
      std::vector<double> d(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) d[i] = to_double(v[i]);
      raw.push_back(std::move(d));
    }
    // modified Gram-Schmidt
    for (auto& v : raw) {
      for (const auto& q : qbasis) {
        double dot = 0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * q[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
      }
      double norm = 0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-10) {
        for (double& x : v) x /= norm;
        qbasis.push_back(v);
      }
    }
  }

  double operator()(const std::vector<double>& diag) const {
    std::vector<double> r = numeric_ricci_operator_diag(alg, diag);
    double rn = 0;
    for (double x : r) rn += x * x;
    rn = std::sqrt(rn);
    if (rn < 1e-300) return 0.0;
    for (const auto& q : qbasis) {
      double dot = 0;
      for (std::size_t i = 0; i < r.size(); ++i) dot += r[i] * q[i];
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= dot * q[i];
    }
    double rest = 0;
    for (double x : r) rest += x * x;
    return std::sqrt(rest) / rn;
  }
};

}  // namespace

SolitonSearchResult soliton_search_diagonal(const GraphLieAlgebra<Rational>& alg, int iters,
                                            double tol, std::uint64_t seed) {
  if (!every_vertex_in_clique(alg.graph(), alg.cliques()))
    throw PreconditionError("soliton_search_diagonal requires every vertex to lie in a clique");
  int n = alg.dim();
  SymmetryOrbits orbits = symmetry_orbits(alg.graph(), alg.cliques());
  // class index per basis element
  std::vector<int> cls(n);
  int nv = alg.dim_v(), ne = alg.dim_w();
  for (int i = 0; i < nv; ++i) cls[i] = orbits.vertex_orbit[i];
  for (int e = 0; e < ne; ++e) cls[nv + e] = orbits.n_vertex_orbits + orbits.edge_orbit[e];
  for (int t = 0; t < alg.dim_u(); ++t)
    cls[nv + ne + t] = orbits.n_vertex_orbits + orbits.n_edge_orbits + orbits.clique_orbit[t];
  int nclasses = orbits.n_vertex_orbits + orbits.n_edge_orbits + orbits.n_clique_orbits;

  ResidualEvaluator residual(alg);
  std::vector<double> params(nclasses, 0.0);
  if (seed != 0) {
    XorShift64Star rng(seed);
    for (auto& p : params) p = 0.2 * (rng.next_unit() - 0.5);
    params[0] = 0.0;  // gauge: pin the first class against metric-scale drift
  }

  auto diag_of = [&](const std::vector<double>& p) {
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = std::exp(p[cls[i]]);
    return d;
  };

  SolitonSearchResult out;
  double best = residual(diag_of(params));
  out.history.push_back(best);
  double step = 0.5;
  int sweep = 0;
  for (; sweep < iters && best >= tol && step > 1e-14; ++sweep) {
    bool improved = false;
    for (int k = 1; k < nclasses; ++k) {  // class 0 pinned
      for (double delta : {step, -step}) {
        std::vector<double> trial = params;
        trial[k] += delta;
        double r = residual(diag_of(trial));
        if (r < best) {
          best = r;
          params = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    out.history.push_back(best);
  }
  out.iterations = sweep;
  out.best_diag = diag_of(params);
  out.residual = best;

  // exact polish: try the linear diagonal-soliton solver seeded by the
  // numeric optimum, then fall back to continued-fraction rationalization
  if (std::optional<MetricTensor> exact = exact_diagonal_soliton(alg, &out.best_diag)) {
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = to_double(exact->g().at(i, i));
    double r = residual(d);
    if (r <= std::max(best, tol)) {
      out.best_diag = d;
      out.residual = r;
      out.history.push_back(r);
      LieAlgebraValue val = LieAlgebraValue::from_graph_algebra(alg);
      out.certificate = soliton_check(val, *exact);
      out.certified_metric = *exact;
    }
  }
  if (!out.certificate) {
    std::vector<Rational> d(n);
    for (int i = 0; i < n; ++i) d[i] = rational_approx(out.best_diag[i], 1000);
    bool pos = true;
    for (const auto& x : d)
      if (!(x > 0)) pos = false;
    if (pos) {
      MetricTensor metric = MetricTensor::diagonal(d);
      LieAlgebraValue val = LieAlgebraValue::from_graph_algebra(alg);
      SolitonCertificate cert = soliton_check(val, metric);
      out.certificate = cert;
      if (cert.found && cert.is_derivation) out.certified_metric = metric;
    }
  }
  out.reached_tol = out.residual < tol;
  return out;
}

}  // namespace liegraph
