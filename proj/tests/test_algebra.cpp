#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liegraph/algebra.hpp"

using namespace liegraph;

namespace {

using AlgQ = GraphLieAlgebra<Rational>;

Graph triangle_pendant() { return parse_edge_list("4\n1 2\n1 3\n2 3\n3 4\n"); }

std::vector<int> random_permutation(int n, XorShift64Star& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng.next_below(static_cast<std::uint64_t>(i + 1))]);
  return p;
}

std::vector<Graph> corpus() {
  std::vector<Graph> gs;
  for (int n = 3; n <= 6; ++n) gs.push_back(generate("kn:" + std::to_string(n), 0));
  for (int n = 2; n <= 5; ++n) gs.push_back(generate("path:" + std::to_string(n), 0));
  for (int n = 4; n <= 6; ++n) gs.push_back(generate("cycle:" + std::to_string(n), 0));
  gs.push_back(triangle_pendant());
  return gs;
}

// Dense independent oracle for the derivation space: assemble the Leibniz
// system as an explicit matrix and take its kernel.
template <class K>
int derivation_dim_dense(const GraphLieAlgebra<K>& alg) {
  int d = alg.dim();
  std::vector<std::vector<K>> rows;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      auto [tab, cab] = alg.bracket_basis(a, b);
      for (int q = 0; q < d; ++q) {
        std::vector<K> row(d * d, K(0));
        if (tab >= 0) row[q * d + tab] += cab;
        for (int m = 0; m < d; ++m) {
          auto [t1, c1] = alg.bracket_basis(m, b);
          if (t1 == q) row[m * d + a] -= c1;
          auto [t2, c2] = alg.bracket_basis(a, m);
          if (t2 == q) row[m * d + b] -= c2;
        }
        if (!is_zero_vec(row)) rows.push_back(std::move(row));
      }
    }
  Matrix<K> sys(static_cast<int>(rows.size()), d * d);
  for (int i = 0; i < sys.rows(); ++i) sys.set_row(i, rows[i]);
  return d * d - rank(sys);
}

}  // namespace

TEST_CASE("dimensions of V, W, U") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  CHECK(k3.dim() == 7);
  CHECK(k3.dim_v() == 3);
  CHECK(k3.dim_w() == 3);
  CHECK(k3.dim_u() == 1);

  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  CHECK(k5.dim() == 25);
  CHECK(k5.dim_u() == 10);

  AlgQ p3 = AlgQ::build(generate("path:3", 0), 3);
  CHECK(p3.dim() == 5);
  CHECK(p3.dim_u() == 0);

  CHECK_THROWS_AS(AlgQ::build(generate("kn:3", 0), 2), std::invalid_argument);
}

TEST_CASE("bracket table matches the defining relations") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  int e1 = k3.vertex_index(1), e2 = k3.vertex_index(2);
  int e12 = k3.edge_index({1, 2});
  int u = k3.clique_index({1, 2, 3});

  // [e1, e2] = e1^e2
  auto [t1, c1] = k3.bracket_basis(e1, e2);
  CHECK(t1 == e12);
  CHECK(c1 == Rational(1));
  // antisymmetry is synthesized on read
  auto [t1r, c1r] = k3.bracket_basis(e2, e1);
  CHECK(t1r == e12);
  CHECK(c1r == Rational(-1));
  // [e1, e123] = e1 ; [e1^e2, e123] = 2 e1^e2
  auto [t2, c2] = k3.bracket_basis(e1, u);
  CHECK(t2 == e1);
  CHECK(c2 == Rational(1));
  auto [t3, c3] = k3.bracket_basis(e12, u);
  CHECK(t3 == e12);
  CHECK(c3 == Rational(2));

  // one shared vertex: [e3^e4, e123] = e3^e4 on the triangle+pendant graph
  AlgQ tp = AlgQ::build(triangle_pendant(), 3);
  int e34 = tp.edge_index({3, 4});
  int ut = tp.clique_index({1, 2, 3});
  auto [t4, c4] = tp.bracket_basis(e34, ut);
  CHECK(t4 == e34);
  CHECK(c4 == Rational(1));

  // brackets between cliques vanish (K4)
  AlgQ k4 = AlgQ::build(generate("kn:4", 0), 3);
  auto [t5, c5] = k4.bracket_basis(k4.clique_index({1, 2, 3}), k4.clique_index({1, 2, 4}));
  CHECK(t5 == -1);
  CHECK(is_zero(c5));

  // bilinearity
  std::vector<Rational> x = k3.basis_vector(e1);
  add_scaled(x, k3.basis_vector(e2), Rational(3));
  std::vector<Rational> y = k3.basis_vector(u);
  std::vector<Rational> br = k3.bracket(x, y);
  CHECK(br[e1] == Rational(1));
  CHECK(br[e2] == Rational(3));
}

TEST_CASE("adjoint matrices") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  int u = k3.clique_index({1, 2, 3});
  Matrix<Rational> ad_u = k3.adjoint_matrix(k3.basis_vector(u));
  std::vector<long> expect{-1, -1, -1, -2, -2, -2, 0};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      CHECK(ad_u.at(i, j) == (i == j ? Rational(expect[i]) : Rational(0)));

  // ad of e1, checked cell by cell against the defining relations
  Matrix<Rational> ad_1 = k3.adjoint_matrix(k3.basis_vector(0));
  Matrix<Rational> expect_1(7, 7);
  expect_1.at(k3.edge_index({1, 2}), k3.vertex_index(2)) = Rational(1);
  expect_1.at(k3.edge_index({1, 3}), k3.vertex_index(3)) = Rational(1);
  expect_1.at(k3.vertex_index(1), u) = Rational(1);  // [e1, e123] = e1
  CHECK(ad_1 == expect_1);

  // ad of a central element is zero (isolated vertex)
  Graph ti = parse_edge_list("4\n1 2\n1 3\n2 3\n");
  AlgQ alg = AlgQ::build(ti, 3);
  CHECK(alg.adjoint_matrix(alg.basis_vector(alg.vertex_index(4))).is_zero_matrix());
}

TEST_CASE("Jacobi identity: corpus, weights, fault injection") {
  for (const Graph& g : corpus()) {
    AlgQ alg = AlgQ::build(g, 3);
    CHECK(alg.verify_jacobi().ok);
  }

  // weighted K5 with random nonzero rational weights
  XorShift64Star rng(31);
  std::vector<Rational> w;
  for (int i = 0; i < 5; ++i)
    w.push_back(Rational(1 + static_cast<long>(rng.next_below(9))) / Rational(1 + static_cast<long>(rng.next_below(4))));
  AlgQ k5w = AlgQ::build(generate("kn:5", 0), 3, w);
  CHECK(k5w.verify_jacobi().ok);

  // k = 4 cliques
  AlgQ k5k4 = AlgQ::build(generate("kn:5", 0), 4);
  CHECK(k5k4.dim_u() == 5);
  CHECK(k5k4.verify_jacobi().ok);

  // over F_5
  GraphLieAlgebra<Fp> k4p = GraphLieAlgebra<Fp>::build(generate("kn:4", 0), 3,
                                                       std::vector<Fp>(4, Fp::make(1, 5)));
  CHECK(k4p.verify_jacobi().ok);

  // a corrupted structure constant is caught with a witness triple
  AlgQ bad = AlgQ::build(generate("kn:3", 0), 3);
  bad.inject_bracket(bad.vertex_index(1), bad.clique_index({1, 2, 3}), bad.vertex_index(2),
                     Rational(1));  // [e1, e123] := e2
  JacobiReport<Rational> rep = bad.verify_jacobi();
  CHECK_FALSE(rep.ok);
  CHECK(rep.a >= 0);
}

TEST_CASE("clique incidence matrix") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  Matrix<Rational> a3 = k3.clique_incidence_matrix();
  CHECK(a3.rows() == 3);
  CHECK(a3.cols() == 1);
  for (int i = 0; i < 3; ++i) CHECK(a3.at(i, 0) == Rational(1));

  AlgQ k4 = AlgQ::build(generate("kn:4", 0), 3);
  CHECK(kernel(k4.clique_incidence_matrix()).rows() == 0);

  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  Matrix<Rational> a5 = k5.clique_incidence_matrix();
  CHECK(rank(a5) == 5);
  CHECK(kernel(a5).rows() == 5);

  // complement of ker(A) inside the 10-dimensional clique space
  Subspace<Rational> ker5 = Subspace<Rational>::from_rows(kernel(a5));
  Subspace<Rational> comp = orthogonal_complement(ker5);
  CHECK(comp.dim() == 5);
  CHECK(intersection(ker5, comp).dim() == 0);
}

TEST_CASE("center: formula, oracle, paper constants") {
  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  Subspace<Rational> z5 = k5.center_formula();
  CHECK(z5.dim() == 5);
  // x = e123 - e134 + e145 - e125
  std::vector<Rational> x(k5.dim(), Rational(0));
  x[k5.clique_index({1, 2, 3})] = Rational(1);
  x[k5.clique_index({1, 3, 4})] = Rational(-1);
  x[k5.clique_index({1, 4, 5})] = Rational(1);
  x[k5.clique_index({1, 2, 5})] = Rational(-1);
  CHECK(z5.contains(x));
  CHECK(k5.center_oracle() == z5);

  AlgQ k4 = AlgQ::build(generate("kn:4", 0), 3);
  CHECK(k4.center_formula().dim() == 0);

  Graph ti = parse_edge_list("4\n1 2\n1 3\n2 3\n");  // triangle + isolated vertex 4
  AlgQ alg = AlgQ::build(ti, 3);
  Subspace<Rational> z = alg.center_formula();
  CHECK(z.dim() == 1);
  CHECK(z.contains(alg.basis_vector(alg.vertex_index(4))));

  // edgeless graph: abelian, center is everything
  AlgQ ab = AlgQ::build(parse_edge_list("3\n"), 3);
  CHECK(ab.center_oracle().dim() == ab.dim());
  CHECK(ab.center_formula() == ab.center_oracle());

  for (const Graph& g : corpus()) {
    AlgQ a = AlgQ::build(g, 3);
    CHECK(a.center_formula() == a.center_oracle());
  }
}

TEST_CASE("center in characteristic 2: formula refuses, oracle may grow") {
  auto f2 = [](long long v) { return Fp::make(v, 2); };
  GraphLieAlgebra<Fp> k3 = GraphLieAlgebra<Fp>::build(generate("kn:3", 0), 3,
                                                      std::vector<Fp>(3, f2(1)));
  CHECK_THROWS_AS(k3.center_formula(), PreconditionError);
  CHECK_THROWS_AS(k3.nilradical(), PreconditionError);
  Subspace<Fp> formula = k3.center_formula_span();
  Subspace<Fp> oracle = k3.center_oracle();
  CHECK(oracle.contains(formula));
  // over F_2 the bracket [e_a^e_b, e_123] = 2(...) vanishes, so E_Delta
  // wedges become central: strict containment on K3.
  CHECK(formula.dim() == 0);
  CHECK(oracle.dim() == 3);
  std::vector<Fp> e12(k3.dim(), f2(0));
  e12[k3.edge_index({1, 2})] = f2(1);
  CHECK(oracle.contains(e12));
}

TEST_CASE("nilradical: formula, ideal, certified nilpotent") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  Subspace<Rational> nr3 = k3.nilradical();
  CHECK(nr3.dim() == 6);
  CHECK(k3.is_ideal(nr3));
  CHECK(k3.certify_nilpotent(nr3));

  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  CHECK(k5.nilradical().dim() == 20);

  AlgQ p3 = AlgQ::build(generate("path:3", 0), 3);
  CHECK(p3.nilradical().dim() == 5);  // whole algebra, nilpotent

  for (const Graph& g : corpus()) {
    AlgQ a = AlgQ::build(g, 3);
    Subspace<Rational> nr = a.nilradical();
    CHECK(a.is_ideal(nr));
    CHECK(a.certify_nilpotent(nr));
  }

  // the full K3 algebra is not nilpotent (clique adjoints have nonzero diagonal)
  CHECK_FALSE(k3.certify_nilpotent(k3.full_space()));
}

TEST_CASE("derived and lower central series") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  std::vector<Subspace<Rational>> ds = k3.derived_series();
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].dim() == 6);
  CHECK(ds[1].dim() == 3);
  CHECK(ds[2].dim() == 0);

  std::vector<Subspace<Rational>> lcs = k3.lower_central_series();
  CHECK(lcs.back().dim() == 6);

  AlgQ ab = AlgQ::build(parse_edge_list("4\n"), 3);
  CHECK(ab.derived_series()[0].dim() == 0);

  for (const Graph& g : corpus()) {
    AlgQ a = AlgQ::build(g, 3);
    CHECK(a.verify_series_closed_form());
  }

  // triangle+pendant: the stabilized lower central term contains the
  // Delta-Gamma edge (3,4)
  AlgQ tp = AlgQ::build(triangle_pendant(), 3);
  CHECK(tp.verify_series_closed_form());
  CHECK(tp.lower_central_series().back().contains(tp.basis_vector(tp.edge_index({3, 4}))));

  // weighted corpus (nonzero weights), k = 4 variant
  XorShift64Star rng(77);
  for (const Graph& g : corpus()) {
    std::vector<Rational> w;
    for (int i = 0; i < g.n; ++i) w.push_back(Rational(1 + static_cast<long>(rng.next_below(5))));
    AlgQ a = AlgQ::build(g, 3, w);
    CHECK(a.verify_series_closed_form());
    AlgQ a4 = AlgQ::build(g, 4);
    CHECK(a4.verify_series_closed_form());
  }
}

TEST_CASE("trace identity for kernel elements") {
  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  auto kernel_elt = [&](const std::vector<int>& perm) {
    // x = e123 - e134 + e145 - e125 relabeled through perm
    std::vector<Rational> v(k5.dim(), Rational(0));
    auto idx = [&](int a, int b, int c) {
      std::vector<int> t{perm[a - 1], perm[b - 1], perm[c - 1]};
      std::sort(t.begin(), t.end());
      return k5.clique_index(t);
    };
    v[idx(1, 2, 3)] += Rational(1);
    v[idx(1, 3, 4)] += Rational(-1);
    v[idx(1, 4, 5)] += Rational(1);
    v[idx(1, 2, 5)] += Rational(-1);
    return v;
  };
  // identity, (12), (34), (12)(45), (143) as vertex relabelings
  std::vector<std::vector<int>> perms{
      {1, 2, 3, 4, 5}, {2, 1, 3, 4, 5}, {1, 2, 4, 3, 5}, {2, 1, 3, 5, 4}, {4, 2, 1, 3, 5}};
  Matrix<Rational> gens(5, k5.dim());
  for (int i = 0; i < 5; ++i) {
    std::vector<Rational> z = kernel_elt(perms[i]);
    CHECK(k5.trace_identity_check(z));
    gens.set_row(i, z);
  }
  // the five images are linearly independent and span ker(A) = Z(g)
  CHECK(rank(gens) == 5);

  std::vector<Rational> zero(k5.dim(), Rational(0));
  CHECK(k5.trace_identity_check(zero));

  std::vector<Rational> not_kernel(k5.dim(), Rational(0));
  not_kernel[k5.clique_index({1, 2, 3})] = Rational(1);
  CHECK_THROWS_AS(k5.trace_identity_check(not_kernel), std::invalid_argument);

  // every kernel basis vector satisfies the identity (corpus)
  for (const Graph& g : corpus()) {
    AlgQ a = AlgQ::build(g, 3);
    Matrix<Rational> ka = kernel(a.clique_incidence_matrix());
    for (int r = 0; r < ka.rows(); ++r) {
      std::vector<Rational> z(a.dim(), Rational(0));
      for (int c = 0; c < a.dim_u(); ++c) z[a.dim_v() + a.dim_w() + c] = ka.at(r, c);
      CHECK(a.trace_identity_check(z));
    }
  }
}

TEST_CASE("derivation space") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  Subspace<Rational> der = k3.derivation_space();
  CHECK(der.dim() == 15);  // frozen from the exact computation
  CHECK(der.dim() == derivation_dim_dense(k3));

  // all adjoints are derivations
  for (int i = 0; i < k3.dim(); ++i) {
    Matrix<Rational> ad = k3.adjoint_matrix(k3.basis_vector(i));
    CHECK(k3.is_derivation(ad));
    std::vector<Rational> flat(k3.dim() * k3.dim());
    for (int r = 0; r < k3.dim(); ++r)
      for (int c = 0; c < k3.dim(); ++c) flat[r * k3.dim() + c] = ad.at(r, c);
    CHECK(der.contains(flat));
  }

  // the identity is not a derivation (the bracket V x V -> W has degree 2)
  CHECK_FALSE(k3.is_derivation(Matrix<Rational>::identity(k3.dim())));

  // sparse and dense paths agree on further graphs
  for (const char* spec : {"kn:4", "path:4", "cycle:4"}) {
    AlgQ a = AlgQ::build(generate(spec, 0), 3);
    CHECK(a.derivation_space().dim() == derivation_dim_dense(a));
  }
}

TEST_CASE("completely solvable check") {
  for (const char* spec : {"kn:3", "kn:4", "kn:5"}) {
    AlgQ a = AlgQ::build(generate(spec, 0), 3);
    CHECK(a.completely_solvable_check());
  }
  AlgQ p3 = AlgQ::build(generate("path:3", 0), 3);
  CHECK(p3.completely_solvable_check());  // vacuous: no cliques

  // weighted K3 with w = (1,2,3): adjoint diagonal {-1,-2,-3,-3,-4,-5,0}
  AlgQ k3w = AlgQ::build(generate("kn:3", 0), 3,
                         std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  CHECK(k3w.completely_solvable_check());
  Matrix<Rational> ad = k3w.adjoint_matrix(k3w.basis_vector(k3w.clique_index({1, 2, 3})));
  std::multiset<std::string> got;
  for (int i = 0; i < k3w.dim(); ++i) got.insert(scalar_str(ad.at(i, i)));
  CHECK(got == std::multiset<std::string>{"-1", "-2", "-3", "-3", "-4", "-5", "0"});
}

TEST_CASE("fingerprints") {
  AlgQ k5 = AlgQ::build(generate("kn:5", 0), 3);
  Fingerprint f5 = k5.fingerprint();
  CHECK(f5.dim_center == 5);
  CHECK(f5.dim_u == 10);
  CHECK(f5.dim_derived3 == 0);

  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  AlgQ p3 = AlgQ::build(generate("path:3", 0), 3);
  CHECK_FALSE(k3.fingerprint() == p3.fingerprint());

  XorShift64Star rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(4));  // 4..7
    Graph g = generate("gnp:" + std::to_string(n) + ":0.45", 900 + trial);
    std::vector<int> sigma = random_permutation(n, rng);
    AlgQ a = AlgQ::build(g, 3);
    AlgQ b = AlgQ::build(permute_graph(g, sigma), 3);
    CHECK(a.fingerprint() == b.fingerprint());
  }
}

TEST_CASE("isomorphism from permutation") {
  AlgQ k3 = AlgQ::build(generate("kn:3", 0), 3);
  IsomorphismResult<Rational> idm = isomorphism_from_permutation(k3, k3, {1, 2, 3});
  REQUIRE(idm.ok);
  CHECK(idm.map == Matrix<Rational>::identity(7));

  // sigma = (1 2): e1^e2 picks up sign -1
  IsomorphismResult<Rational> swp = isomorphism_from_permutation(k3, k3, {2, 1, 3});
  REQUIRE(swp.ok);
  int e12 = k3.edge_index({1, 2});
  CHECK(swp.map.at(e12, e12) == Rational(-1));

  // sigma = (1 2) is not a graph isomorphism of P3 (edges 12, 23)
  AlgQ p3 = AlgQ::build(generate("path:3", 0), 3);
  IsomorphismResult<Rational> bad = isomorphism_from_permutation(p3, p3, {2, 1, 3});
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.find("non-edge") != std::string::npos);

  CHECK_THROWS_AS(isomorphism_from_permutation(k3, k3, {1, 1, 3}), std::invalid_argument);

  // random (graph, permutation) pairs: the induced map always verifies
  XorShift64Star rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(4));
    Graph g = generate("gnp:" + std::to_string(n) + ":0.5", 700 + trial);
    std::vector<int> sigma = random_permutation(n, rng);
    AlgQ a = AlgQ::build(g, 3);
    AlgQ b = AlgQ::build(permute_graph(g, sigma), 3);
    CHECK(isomorphism_from_permutation(a, b, sigma).ok);
  }
}

TEST_CASE("bracket antisymmetry on random elements") {
  XorShift64Star rng(61);
  for (const Graph& g : corpus()) {
    AlgQ a = AlgQ::build(g, 3);
    std::vector<Rational> x(a.dim()), y(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
      x[i] = Rational(static_cast<long>(rng.next_below(7)) - 3);
      y[i] = Rational(static_cast<long>(rng.next_below(7)) - 3);
    }
    std::vector<Rational> xy = a.bracket(x, y);
    std::vector<Rational> yx = a.bracket(y, x);
    for (int i = 0; i < a.dim(); ++i) CHECK(xy[i] == -yx[i]);
    CHECK(is_zero_vec(a.bracket(x, x)));
  }
}

TEST_CASE("random graphs: Jacobi + dimension bookkeeping (n <= 8, k in {3,4})") {
  XorShift64Star rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));  // 4..8
    Graph g = generate("gnp:" + std::to_string(n) + ":0.4", 1100 + trial);
    for (int k : {3, 4}) {
      std::vector<Rational> w;
      for (int i = 0; i < n; ++i) w.push_back(Rational(1 + static_cast<long>(rng.next_below(6))));
      AlgQ a = AlgQ::build(g, k, w);
      CHECK(a.dim() == a.dim_v() + a.dim_w() + a.dim_u());
      CHECK(a.verify_jacobi().ok);
      CHECK(kernel(a.clique_incidence_matrix()).rows() + rank(a.clique_incidence_matrix()) == a.dim_u());
    }
  }
}

TEST_CASE("dim Z(K_n): 0 for n <= 4 and C(n,3) - n for 5 <= n <= 8") {
  for (int n = 3; n <= 8; ++n) {
    AlgQ a = AlgQ::build(generate("kn:" + std::to_string(n), 0), 3);
    int expect = n <= 4 ? 0 : n * (n - 1) * (n - 2) / 6 - n;
    CHECK(a.center_formula().dim() == expect);
    if (n >= 5) CHECK(rank(a.clique_incidence_matrix()) == n);
  }
}

TEST_CASE("weighted center conditions are enforced lazily") {
  // zero weight: construction fine (Jacobi holds), formulas refuse
  AlgQ zw = AlgQ::build(generate("kn:3", 0), 3,
                        std::vector<Rational>{Rational(0), Rational(1), Rational(1)});
  CHECK(zw.verify_jacobi().ok);
  CHECK_THROWS_AS(zw.center_formula(), PreconditionError);

  // w_i + w_j = 0 on an edge: formulas refuse, oracle still answers
  AlgQ cw = AlgQ::build(generate("kn:3", 0), 3,
                        std::vector<Rational>{Rational(1), Rational(-1), Rational(2)});
  CHECK(cw.verify_jacobi().ok);
  CHECK_THROWS_AS(cw.center_formula(), PreconditionError);
  CHECK_NOTHROW(cw.center_oracle());

  CHECK_THROWS_AS(AlgQ::build(generate("kn:3", 0), 3, std::vector<Rational>{Rational(1)}),
                  std::invalid_argument);
}
