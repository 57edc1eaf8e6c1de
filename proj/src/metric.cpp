#include "liegraph/metric.hpp"

#include <algorithm>
#include <cmath>

#include "liegraph/sym_eigen.hpp"

namespace liegraph {

namespace {

std::vector<Rational> dense_of(const SparseVec& s, int dim) {
  std::vector<Rational> v(dim, Rational(0));
  for (const auto& [i, c] : s) v[i] += c;
  return v;
}

SparseVec sparse_of(const std::vector<Rational>& v) {
  SparseVec s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!is_zero(v[i])) s.push_back({i, v[i]});
  return s;
}

// exact LDL^T positivity test
bool spd_ldl(const Matrix<Rational>& a) {
  int n = a.rows();
  Matrix<Rational> m = a;
  for (int k = 0; k < n; ++k) {
    if (!(m.at(k, k) > 0)) return false;
    for (int i = k + 1; i < n; ++i) {
      Rational f = m.at(i, k) / m.at(k, k);
      for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return true;
}

Matrix<Rational> inverse(const Matrix<Rational>& a) {
  int n = a.rows();
  Matrix<Rational> aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n + r) = Rational(1);
  }
  RrefResult info = rref_in_place(aug);
  if (info.rank != n) throw std::invalid_argument("matrix not invertible");
  Matrix<Rational> inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

Rational trace_product(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  Rational t(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!is_zero(a.at(i, j)) && !is_zero(b.at(j, i))) t += a.at(i, j) * b.at(j, i);
  return t;
}

}  // namespace

LieAlgebraValue LieAlgebraValue::from_graph_algebra(const GraphLieAlgebra<Rational>& alg) {
  LieAlgebraValue v;
  v.dim_ = alg.dim();
  v.table_.assign(static_cast<std::size_t>(v.dim_) * v.dim_, {});
  for (int a = 0; a < v.dim_; ++a)
    for (int b = a + 1; b < v.dim_; ++b) {
      auto [t, c] = alg.bracket_basis(a, b);
      if (t >= 0 && !is_zero(c)) v.table_[static_cast<std::size_t>(a) * v.dim_ + b].push_back({t, c});
    }
  return v;
}

LieAlgebraValue LieAlgebraValue::restrict(const LieAlgebraValue& parent, const Subspace<Rational>& sub) {
  LieAlgebraValue v;
  v.dim_ = sub.dim();
  v.table_.assign(static_cast<std::size_t>(v.dim_) * v.dim_, {});
  for (int a = 0; a < v.dim_; ++a)
    for (int b = a + 1; b < v.dim_; ++b) {
      std::vector<Rational> br = parent.bracket(sub.basis_vector(a), sub.basis_vector(b));
      std::vector<Rational> coords;
      try {
        coords = sub.coordinates(br);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("subspace is not closed under the bracket");
      }
      v.table_[static_cast<std::size_t>(a) * v.dim_ + b] = sparse_of(coords);
    }
  return v;
}

SparseVec LieAlgebraValue::bracket_basis(int a, int b) const {
  if (a == b) return {};
  if (a < b) return table_[static_cast<std::size_t>(a) * dim_ + b];
  SparseVec s = table_[static_cast<std::size_t>(b) * dim_ + a];
  for (auto& [i, c] : s) c = -c;
  return s;
}

std::vector<Rational> LieAlgebraValue::bracket(const std::vector<Rational>& x,
                                               const std::vector<Rational>& y) const {
  std::vector<Rational> r(dim_, Rational(0));
  for (int a = 0; a < dim_; ++a) {
    if (is_zero(x[a])) continue;
    for (int b = 0; b < dim_; ++b) {
      if (is_zero(y[b]) || a == b) continue;
      for (const auto& [t, c] : bracket_basis(a, b)) r[t] += x[a] * y[b] * c;
    }
  }
  return r;
}

Matrix<Rational> LieAlgebraValue::adjoint(const std::vector<Rational>& x) const {
  Matrix<Rational> m(dim_, dim_);
  for (int a = 0; a < dim_; ++a) {
    if (is_zero(x[a])) continue;
    for (int b = 0; b < dim_; ++b) {
      if (a == b) continue;
      for (const auto& [t, c] : bracket_basis(a, b)) m.at(t, b) += x[a] * c;
    }
  }
  return m;
}

Matrix<Rational> LieAlgebraValue::adjoint_basis(int a) const { return adjoint(basis_vector(a)); }

Rational LieAlgebraValue::ad_trace(int a) const {
  Rational t(0);
  for (int b = 0; b < dim_; ++b)
    for (const auto& [i, c] : bracket_basis(a, b))
      if (i == b) t += c;
  return t;
}

std::vector<Rational> LieAlgebraValue::basis_vector(int i) const {
  std::vector<Rational> v(dim_, Rational(0));
  v[i] = Rational(1);
  return v;
}

Subspace<Rational> LieAlgebraValue::derivation_space() const {
  return leibniz_kernel<Rational>(dim_, [this](int a, int b) { return bracket_basis(a, b); });
}

bool LieAlgebraValue::is_derivation(const Matrix<Rational>& d) const {
  if (d.rows() != dim_ || d.cols() != dim_) throw std::invalid_argument("derivation shape mismatch");
  for (int a = 0; a < dim_; ++a) {
    std::vector<Rational> da(dim_);
    for (int r = 0; r < dim_; ++r) da[r] = d.at(r, a);
    for (int b = a + 1; b < dim_; ++b) {
      std::vector<Rational> db(dim_);
      for (int r = 0; r < dim_; ++r) db[r] = d.at(r, b);
      std::vector<Rational> lhs(dim_, Rational(0));
      for (const auto& [t, c] : bracket_basis(a, b))
        for (int r = 0; r < dim_; ++r) lhs[r] += c * d.at(r, t);
      std::vector<Rational> rhs = bracket(da, basis_vector(b));
      std::vector<Rational> rhs2 = bracket(basis_vector(a), db);
      for (int r = 0; r < dim_; ++r)
        if (!is_zero(lhs[r] - rhs[r] - rhs2[r])) return false;
    }
  }
  return true;
}

MetricTensor MetricTensor::identity(int dim) {
  MetricTensor m;
  m.g_ = Matrix<Rational>::identity(dim);
  m.ginv_ = m.g_;
  m.diagonal_ = true;
  return m;
}

MetricTensor MetricTensor::diagonal(const std::vector<Rational>& d) {
  MetricTensor m;
  int n = static_cast<int>(d.size());
  m.g_ = Matrix<Rational>(n, n);
  m.ginv_ = Matrix<Rational>(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(d[i] > 0)) throw std::invalid_argument("diagonal metric entries must be positive");
    m.g_.at(i, i) = d[i];
    m.ginv_.at(i, i) = Rational(1) / d[i];
  }
  m.diagonal_ = true;
  return m;
}

MetricTensor MetricTensor::dense(const Matrix<Rational>& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("metric must be square");
  for (int r = 0; r < g.rows(); ++r)
    for (int c = r + 1; c < g.cols(); ++c)
      if (!(g.at(r, c) == g.at(c, r))) throw std::invalid_argument("metric must be symmetric");
  if (!spd_ldl(g)) throw std::invalid_argument("metric is not positive definite");
  MetricTensor m;
  m.g_ = g;
  m.ginv_ = inverse(g);
  m.diagonal_ = true;
  for (int r = 0; r < g.rows() && m.diagonal_; ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (r != c && !is_zero(g.at(r, c))) m.diagonal_ = false;
  return m;
}

Rational MetricTensor::inner(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
  std::vector<Rational> gy = g_.apply(y);
  Rational s(0);
  for (int i = 0; i < dim(); ++i)
    if (!is_zero(x[i])) s += x[i] * gy[i];
  return s;
}

std::vector<double> MetricTensor::diag_double() const {
  std::vector<double> d(dim());
  for (int i = 0; i < dim(); ++i) d[i] = to_double(g_.at(i, i));
  return d;
}

std::vector<Rational> Connection::nabla(const std::vector<Rational>& x,
                                        const std::vector<Rational>& y) const {
  std::vector<Rational> r(dim, Rational(0));
  for (int a = 0; a < dim; ++a) {
    if (is_zero(x[a])) continue;
    for (int b = 0; b < dim; ++b) {
      if (is_zero(y[b])) continue;
      for (const auto& [t, c] : at(a, b)) r[t] += x[a] * y[b] * c;
    }
  }
  return r;
}

Connection levi_civita(const LieAlgebraValue& alg, const MetricTensor& metric) {
  int n = alg.dim();
  if (metric.dim() != n) throw std::invalid_argument("metric dimension mismatch");
  Connection conn;
  conn.dim = n;
  conn.gamma.assign(static_cast<std::size_t>(n) * n, {});
  const Matrix<Rational>& G = metric.g();

  auto g_with_basis = [&](const SparseVec& s, int c) {
    Rational v(0);
    for (const auto& [t, coef] : s) v += coef * G.at(t, c);
    return v;
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SparseVec s_ab = alg.bracket_basis(a, b);
      std::vector<Rational> rhs(n, Rational(0));
      bool any = false;
      for (int c = 0; c < n; ++c) {
        Rational v = g_with_basis(s_ab, c);
        v -= g_with_basis(alg.bracket_basis(b, c), a);
        v += g_with_basis(alg.bracket_basis(c, a), b);
        if (!is_zero(v)) {
          rhs[c] = v / Rational(2);
          any = true;
        }
      }
      if (!any) continue;
      std::vector<Rational> gamma_vec;
      if (metric.is_diagonal()) {
        gamma_vec.assign(n, Rational(0));
        for (int c = 0; c < n; ++c)
          if (!is_zero(rhs[c])) gamma_vec[c] = rhs[c] * metric.ginv().at(c, c);
      } else {
        gamma_vec = metric.ginv().apply(rhs);
      }
      conn.gamma[static_cast<std::size_t>(a) * n + b] = sparse_of(gamma_vec);
    }
  return conn;
}

std::vector<Rational> curvature_apply(const LieAlgebraValue& alg, const Connection& conn,
                                      const std::vector<Rational>& x, const std::vector<Rational>& y,
                                      const std::vector<Rational>& z) {
  std::vector<Rational> r = conn.nabla(x, conn.nabla(y, z));
  std::vector<Rational> r2 = conn.nabla(y, conn.nabla(x, z));
  std::vector<Rational> r3 = conn.nabla(alg.bracket(x, y), z);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= r2[i] + r3[i];
  return r;
}

namespace {

// R(E_a, E_b) E_c as a dense vector, from basis connection coefficients.
std::vector<Rational> curvature_basis(const LieAlgebraValue& alg, const Connection& conn,
                                      int a, int b, int c) {
  int n = conn.dim;
  std::vector<Rational> r(n, Rational(0));
  for (const auto& [t, v] : conn.at(b, c))
    for (const auto& [u, w] : conn.at(a, t)) r[u] += v * w;
  for (const auto& [t, v] : conn.at(a, c))
    for (const auto& [u, w] : conn.at(b, t)) r[u] -= v * w;
  for (const auto& [s, v] : alg.bracket_basis(a, b))
    for (const auto& [u, w] : conn.at(s, c)) r[u] -= v * w;
  return r;
}

}  // namespace

CurvatureData curvature(const LieAlgebraValue& alg, const MetricTensor& metric) {
  int n = alg.dim();
  CurvatureData cd;
  cd.dim = n;
  cd.conn = levi_civita(alg, metric);
  cd.components.assign(static_cast<std::size_t>(n) * n * n * n, Rational(0));
  const Matrix<Rational>& G = metric.g();

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        std::vector<Rational> v = curvature_basis(alg, cd.conn, a, b, c);
        std::vector<Rational> gv = G.apply(v);
        for (int d = 0; d < n; ++d) {
          if (is_zero(gv[d])) continue;
          cd.components[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = gv[d];
          cd.components[((static_cast<std::size_t>(b) * n + a) * n + c) * n + d] = -gv[d];
        }
      }

  // Ricci: Ric(X,Y) = sum_{a,b} (G^-1)_{ab} g(R(X, E_a) E_b, Y)
  cd.ricci = Matrix<Rational>(n, n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      Rational s(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const Rational& gab = metric.ginv().at(a, b);
          if (is_zero(gab)) continue;
          const Rational& r = cd.R(c, a, b, d);
          if (!is_zero(r)) s += gab * r;
        }
      cd.ricci.at(c, d) = s;
    }
  cd.ricci_op = metric.ginv() * cd.ricci;
  cd.mean_curvature = mean_curvature(alg, metric);

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) cd.pair_order.push_back({a, b});
  int np = static_cast<int>(cd.pair_order.size());
  cd.op_gram = Matrix<Rational>(np, np);
  cd.lambda2_gram = Matrix<Rational>(np, np);
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < np; ++q) {
      auto [a, b] = cd.pair_order[p];
      auto [c, d] = cd.pair_order[q];
      // Sign convention: the quadratic form of the operator at X^Y is the
      // sectional numerator g(R(X,Y)Y,X), so nonpositive operator implies
      // nonpositive curvature.
      cd.op_gram.at(p, q) = cd.R(a, b, d, c);
      cd.lambda2_gram.at(p, q) = G.at(a, c) * G.at(b, d) - G.at(a, d) * G.at(b, c);
    }
  return cd;
}

Matrix<Rational> ricci_exact(const LieAlgebraValue& alg, const MetricTensor& metric) {
  int n = alg.dim();
  Connection conn = levi_civita(alg, metric);
  Matrix<Rational> ric(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<Rational> acc(n, Rational(0));
    if (metric.is_diagonal()) {
      for (int a = 0; a < n; ++a) {
        if (a == c) continue;
        std::vector<Rational> v = curvature_basis(alg, conn, c, a, a);
        const Rational& w = metric.ginv().at(a, a);
        for (int i = 0; i < n; ++i)
          if (!is_zero(v[i])) acc[i] += w * v[i];
      }
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const Rational& w = metric.ginv().at(a, b);
          if (is_zero(w) || a == c) continue;
          std::vector<Rational> v = curvature_basis(alg, conn, c, a, b);
          for (int i = 0; i < n; ++i)
            if (!is_zero(v[i])) acc[i] += w * v[i];
        }
    }
    std::vector<Rational> row = metric.g().apply(acc);
    ric.set_row(c, row);
  }
  return ric;
}

Matrix<Rational> ricci_operator(const LieAlgebraValue& alg, const MetricTensor& metric) {
  return metric.ginv() * ricci_exact(alg, metric);
}

Rational sectional_formula(const LieAlgebraValue& alg, const MetricTensor& metric,
                           const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const Matrix<Rational>& G = metric.g();
  Matrix<Rational> adx = alg.adjoint(x);
  Matrix<Rational> ady = alg.adjoint(y);
  Matrix<Rational> adxt = metric.ginv() * adx.transposed() * G;
  Matrix<Rational> adyt = metric.ginv() * ady.transposed() * G;

  auto inner = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
    return metric.inner(u, v);
  };

  std::vector<Rational> br = alg.bracket(x, y);
  Rational t1 = inner(br, br);
  Rational t2 = inner(adx.apply(adx.apply(y)), y);
  Rational t3 = inner(ady.apply(ady.apply(x)), x);
  Rational t4 = inner(adxt.apply(x), adyt.apply(y));
  std::vector<Rational> mix = adxt.apply(y);
  std::vector<Rational> mix2 = adyt.apply(x);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += mix2[i];
  Rational t5 = inner(mix, mix);

  return Rational(-3) / Rational(4) * t1 - t2 / Rational(2) - t3 / Rational(2) - t4 +
         t5 / Rational(4);
}

std::vector<Rational> mean_curvature(const LieAlgebraValue& alg, const MetricTensor& metric) {
  int n = alg.dim();
  std::vector<Rational> t(n);
  for (int a = 0; a < n; ++a) t[a] = alg.ad_trace(a);
  return metric.ginv().apply(t);
}

Rational ricci_scalar_form(const LieAlgebraValue& alg, const MetricTensor& metric,
                           const std::vector<Rational>& x) {
  if (!metric.is_diagonal())
    throw PreconditionError("the scalar Ricci form is evaluated on diagonal metrics");
  int n = alg.dim();
  const Matrix<Rational>& G = metric.g();
  Matrix<Rational> adx = alg.adjoint(x);
  Matrix<Rational> adxt = metric.ginv() * adx.transposed() * G;

  Rational term1 = trace_product(adx, adx);
  Rational term2 = trace_product(adx, adxt);
  Rational term3(0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v(0);
      for (const auto& [t, c] : alg.bracket_basis(i, j)) {
        std::vector<Rational> gt = G.row(t);
        Rational gx(0);
        for (int a = 0; a < n; ++a)
          if (!is_zero(x[a])) gx += gt[a] * x[a];
        v += c * gx;
      }
      if (!is_zero(v)) term3 += v * v / (G.at(i, i) * G.at(j, j));
    }
  std::vector<Rational> h = mean_curvature(alg, metric);
  std::vector<Rational> adhx = alg.bracket(h, x);
  Rational term4 = metric.inner(adhx, x);

  return -term1 / Rational(2) - term2 / Rational(2) + term3 / Rational(2) - term4;
}

namespace {

Subspace<Rational> derived_span(const LieAlgebraValue& alg) {
  std::vector<std::vector<Rational>> rows;
  for (int a = 0; a < alg.dim(); ++a)
    for (int b = a + 1; b < alg.dim(); ++b) {
      SparseVec s = alg.bracket_basis(a, b);
      if (!s.empty()) rows.push_back(dense_of(s, alg.dim()));
    }
  return Subspace<Rational>::from_vectors(rows, alg.dim());
}

}  // namespace

IwasawaReport iwasawa_check(const LieAlgebraValue& alg, const MetricTensor& metric,
                            const std::vector<Rational>& b0_candidate) {
  int n = alg.dim();
  IwasawaReport rep;
  rep.b0 = b0_candidate;

  Subspace<Rational> gprime = derived_span(alg);
  // metric-orthogonal complement of g'
  Matrix<Rational> bg(gprime.dim(), n);
  for (int r = 0; r < gprime.dim(); ++r) bg.set_row(r, metric.g().apply(gprime.basis_vector(r)));
  Subspace<Rational> comp = Subspace<Rational>::from_rows(kernel(bg));

  // (a) complement is abelian
  bool abelian = true;
  for (int i = 0; i < comp.dim() && abelian; ++i)
    for (int j = i + 1; j < comp.dim() && abelian; ++j)
      if (!is_zero_vec(alg.bracket(comp.basis_vector(i), comp.basis_vector(j)))) abelian = false;
  rep.a = abelian && (comp.dim() + gprime.dim() == n);

  // (b) ad_B symmetric w.r.t. g for all B in the complement, and B -> ad_B
  // injective on it
  bool symmetric = true;
  Matrix<Rational> flat(comp.dim(), n * n);
  for (int i = 0; i < comp.dim(); ++i) {
    Matrix<Rational> ad = alg.adjoint(comp.basis_vector(i));
    Matrix<Rational> gm = metric.g() * ad;
    if (!(gm == gm.transposed())) symmetric = false;
    std::vector<Rational> row(n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) row[r * n + c] = ad.at(r, c);
    flat.set_row(i, row);
  }
  rep.b = symmetric && (comp.dim() == 0 || rank(flat) == comp.dim());

  // (c) via the explicit candidate
  rep.b0_in_complement = comp.contains(b0_candidate);
  if (rep.b0_in_complement && gprime.dim() > 0) {
    std::vector<Rational> coords_zero(gprime.dim(), Rational(0));
    Matrix<Rational> adg(gprime.dim(), gprime.dim());
    bool closed = true;
    for (int j = 0; j < gprime.dim(); ++j) {
      std::vector<Rational> w = alg.bracket(b0_candidate, gprime.basis_vector(j));
      try {
        std::vector<Rational> coords = gprime.coordinates(w);
        for (int i = 0; i < gprime.dim(); ++i) adg.at(i, j) = coords[i];
      } catch (const std::invalid_argument&) {
        closed = false;
        break;
      }
    }
    if (closed) {
      // Gram of the g' basis
      Matrix<Rational> gram(gprime.dim(), gprime.dim());
      for (int i = 0; i < gprime.dim(); ++i)
        for (int j = 0; j < gprime.dim(); ++j)
          gram.at(i, j) = metric.inner(gprime.basis_vector(i), gprime.basis_vector(j));
      Matrix<Rational> form = gram * adg;  // bilinear form g(ad_B0 x, y)
      if (form == form.transposed() && spd_ldl(form)) rep.c = true;
      bool diag = true;
      for (int i = 0; i < gprime.dim() && diag; ++i)
        for (int j = 0; j < gprime.dim() && diag; ++j)
          if (i != j && !is_zero(adg.at(i, j))) diag = false;
      if (diag)
        for (int i = 0; i < gprime.dim(); ++i) rep.b0_eigenvalues.push_back(adg.at(i, i));
    }
  }
  return rep;
}

std::vector<Rational> b0_candidate(const GraphLieAlgebra<Rational>& alg) {
  std::vector<Rational> b0(alg.dim(), Rational(0));
  for (int c = 0; c < alg.dim_u(); ++c) b0[alg.dim_v() + alg.dim_w() + c] = Rational(-1);
  return b0;
}

std::pair<LieAlgebraValue, Subspace<Rational>> g1_subalgebra(const GraphLieAlgebra<Rational>& alg,
                                                             const MetricTensor& metric) {
  (void)metric;
  int n = alg.dim();
  Subspace<Rational> gprime = alg.derived_series()[0];
  // abar = row space of A inside U, embedded into the algebra
  Matrix<Rational> a = alg.clique_incidence_matrix();
  auto [arr, info] = rref(a);
  std::vector<std::vector<Rational>> rows;
  for (int r = 0; r < info.rank; ++r) {
    std::vector<Rational> v(n, Rational(0));
    for (int c = 0; c < alg.dim_u(); ++c) v[alg.dim_v() + alg.dim_w() + c] = arr.at(r, c);
    rows.push_back(std::move(v));
  }
  Subspace<Rational> abar = Subspace<Rational>::from_vectors(rows, n);
  Subspace<Rational> g1 = sum(gprime, abar);
  LieAlgebraValue parent = LieAlgebraValue::from_graph_algebra(alg);
  return {LieAlgebraValue::restrict(parent, g1), g1};
}

namespace {

MetricTensor induced_metric(const MetricTensor& metric, const Subspace<Rational>& sub) {
  Matrix<Rational> gram(sub.dim(), sub.dim());
  for (int i = 0; i < sub.dim(); ++i)
    for (int j = 0; j < sub.dim(); ++j)
      gram.at(i, j) = metric.inner(sub.basis_vector(i), sub.basis_vector(j));
  return MetricTensor::dense(gram);
}

}  // namespace

SplitG1G2 split_g1_g2(const GraphLieAlgebra<Rational>& alg, const MetricTensor& metric) {
  if (!every_vertex_in_clique(alg.graph(), alg.cliques()))
    throw PreconditionError("split requires every vertex to lie in a clique");
  SplitG1G2 out;
  auto [g1_alg, g1_space] = g1_subalgebra(alg, metric);
  out.g1 = g1_space;
  out.g1_algebra = g1_alg;
  out.g1_metric = induced_metric(metric, g1_space);

  Matrix<Rational> ka = kernel(alg.clique_incidence_matrix());
  std::vector<std::vector<Rational>> rows;
  for (int r = 0; r < ka.rows(); ++r) {
    std::vector<Rational> v(alg.dim(), Rational(0));
    for (int c = 0; c < alg.dim_u(); ++c) v[alg.dim_v() + alg.dim_w() + c] = ka.at(r, c);
    rows.push_back(std::move(v));
  }
  out.g2 = Subspace<Rational>::from_vectors(rows, alg.dim());

  if (out.g1.dim() + out.g2.dim() != alg.dim())
    throw std::logic_error("g1 + g2 does not decompose the algebra");
  if (out.g2 != alg.center_oracle()) throw std::logic_error("g2 is not the center");
  // g2 central => abelian; certify by direct brackets
  LieAlgebraValue whole = LieAlgebraValue::from_graph_algebra(alg);
  for (int i = 0; i < out.g2.dim(); ++i)
    for (int b = 0; b < alg.dim(); ++b)
      if (!is_zero_vec(whole.bracket(out.g2.basis_vector(i), alg.basis_vector(b))))
        throw std::logic_error("g2 is not central");
  return out;
}

RicciBlocksResult ricci_blocks(const GraphLieAlgebra<Rational>& alg, const MetricTensor& metric) {
  if (!every_vertex_in_clique(alg.graph(), alg.cliques()))
    throw PreconditionError("ricci_blocks requires every vertex to lie in a clique");
  RicciBlocksResult out;
  auto [g1_alg, g1_space] = g1_subalgebra(alg, metric);
  out.g1 = g1_alg;
  out.g1_space = g1_space;
  out.g1_metric = induced_metric(metric, g1_space);

  // B0 in g1 coordinates for the Iwasawa check
  std::vector<Rational> b0 = g1_space.coordinates(b0_candidate(alg));
  IwasawaReport iw = iwasawa_check(g1_alg, out.g1_metric, b0);
  if (!iw.a || !iw.b)
    throw PreconditionError("Iwasawa conditions (a)/(b) fail for this metric; use the curvature Ricci");

  int n1 = g1_alg.dim();
  Subspace<Rational> gprime = derived_span(g1_alg);
  int np = gprime.dim();
  out.dim_gprime = np;
  // by construction the g' basis occupies the leading coordinates of g1
  for (int i = 0; i < np; ++i) {
    std::vector<Rational> v = gprime.basis_vector(i);
    for (int c = 0; c < n1; ++c)
      if (!(v[c] == (c == i ? Rational(1) : Rational(0))))
        throw std::logic_error("unexpected g' basis layout in g1");
  }

  // Ric_{g'} with the induced metric
  LieAlgebraValue gp_alg = LieAlgebraValue::restrict(g1_alg, gprime);
  MetricTensor gp_metric = induced_metric(out.g1_metric, gprime);
  Matrix<Rational> ric_gp = ricci_exact(gp_alg, gp_metric);

  std::vector<Rational> h = mean_curvature(g1_alg, out.g1_metric);

  out.ricci = Matrix<Rational>(n1, n1);
  for (int i = 0; i < np; ++i) {
    std::vector<Rational> adh_xi = g1_alg.bracket(h, g1_alg.basis_vector(i));
    for (int j = 0; j < np; ++j) {
      Rational v = ric_gp.at(i, j) - out.g1_metric.inner(adh_xi, g1_alg.basis_vector(j));
      out.ricci.at(i, j) = v;
    }
  }
  for (int i = np; i < n1; ++i)
    for (int j = np; j < n1; ++j)
      out.ricci.at(i, j) = -trace_product(g1_alg.adjoint_basis(i), g1_alg.adjoint_basis(j));
  // cross blocks are zero by the block formulas
  return out;
}

StablyRicciDiagonalReport stably_ricci_diagonal_test(const GraphLieAlgebra<Rational>& alg,
                                                     int trials, std::uint64_t seed) {
  if (!every_vertex_in_clique(alg.graph(), alg.cliques()))
    throw PreconditionError("stably_ricci_diagonal_test requires every vertex to lie in a clique");
  StablyRicciDiagonalReport rep;
  rep.trials = trials;
  XorShift64Star rng(seed * 0x9e3779b97f4a7c15ULL + 0x1234567d);
  LieAlgebraValue val = LieAlgebraValue::from_graph_algebra(alg);
  Rational max_abs(0);
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> d(alg.dim());
    for (auto& x : d)
      x = Rational(1 + static_cast<long>(rng.next_below(8))) /
          Rational(1 + static_cast<long>(rng.next_below(4)));
    Matrix<Rational> op = ricci_operator(val, MetricTensor::diagonal(d));
    for (int r = 0; r < op.rows(); ++r)
      for (int c = 0; c < op.cols(); ++c) {
        if (r == c || is_zero(op.at(r, c))) continue;
        rep.all_diagonal = false;
        Rational a = abs(op.at(r, c));
        if (a > max_abs) {
          max_abs = a;
          rep.max_offdiag_exact = scalar_str(op.at(r, c));
        }
      }
  }
  rep.max_offdiag = to_double(max_abs);
  return rep;
}

OperatorSpectrum curvature_operator_spectrum(const CurvatureData& cd) {
  int np = cd.op_gram.rows();
  OperatorSpectrum out;
  if (np == 0) {
    out.nonpositive = true;
    return out;
  }
  // Solve S v = lambda P v with P the Lambda^2 Gram matrix: Cholesky P = LL^t
  // in doubles, then eigen of L^-1 S L^-t.
  std::vector<double> p(static_cast<std::size_t>(np) * np), s(static_cast<std::size_t>(np) * np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      p[i * np + j] = to_double(cd.lambda2_gram.at(i, j));
      s[i * np + j] = to_double(cd.op_gram.at(i, j));
    }
  std::vector<double> l(static_cast<std::size_t>(np) * np, 0.0);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j <= i; ++j) {
      double acc = p[i * np + j];
      for (int k = 0; k < j; ++k) acc -= l[i * np + k] * l[j * np + k];
      if (i == j) {
        if (acc <= 0) throw std::invalid_argument("Lambda^2 Gram matrix is not positive definite");
        l[i * np + i] = std::sqrt(acc);
      } else {
        l[i * np + j] = acc / l[j * np + j];
      }
    }
  // B = L^-1 S L^-T by forward substitutions
  std::vector<double> tmp = s;  // solve L X = S column-wise
  for (int c = 0; c < np; ++c)
    for (int r = 0; r < np; ++r) {
      double acc = tmp[r * np + c];
      for (int k = 0; k < r; ++k) acc -= l[r * np + k] * tmp[k * np + c];
      tmp[r * np + c] = acc / l[r * np + r];
    }
  std::vector<double> b(static_cast<std::size_t>(np) * np);
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < np; ++c) {
      double acc = tmp[r * np + c];
      for (int k = 0; k < c; ++k) acc -= b[r * np + k] * l[c * np + k];
      b[r * np + c] = acc / l[c * np + c];
    }
  SymEigenResult eig = sym_eigen(b, np, 1e-6);
  out.eigenvalues = eig.values;
  out.max_eigenvalue = eig.values.back();
  out.nonpositive = out.max_eigenvalue <= 1e-9;
  out.boundary = std::abs(out.max_eigenvalue) < 1e-9;
  return out;
}

bool verify_curvature_identities(const CurvatureData& cd) {
  int n = cd.dim;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const Rational& r = cd.R(a, b, c, d);
          if (!(r == -cd.R(b, a, c, d))) return false;
          if (!(r == -cd.R(a, b, d, c))) return false;
          if (!(r == cd.R(c, d, a, b))) return false;
          Rational bianchi = r + cd.R(b, c, a, d) + cd.R(c, a, b, d);
          if (!is_zero(bianchi)) return false;
        }
  return true;
}

}  // namespace liegraph
