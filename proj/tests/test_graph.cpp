#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "liegraph/graph.hpp"

using namespace liegraph;

namespace {

// Brute-force k-clique count over all k-subsets.
int brute_clique_count(const Graph& g, int k) {
  std::vector<int> pick;
  int count = 0;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      for (std::size_t a = 0; a < pick.size(); ++a)
        for (std::size_t b = a + 1; b < pick.size(); ++b)
          if (!g.adjacent(pick[a], pick[b])) return;
      ++count;
      return;
    }
    for (int v = from; v <= g.n; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return count;
}

std::vector<int> random_permutation(int n, XorShift64Star& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng.next_below(static_cast<std::uint64_t>(i + 1))]);
  return p;
}

}  // namespace

TEST_CASE("parse_edge_list: basic forms") {
  Graph k3 = parse_edge_list("3\n1 2\n2 3\n1 3\n");
  CHECK(k3.n == 3);
  CHECK(k3.edges.size() == 3);

  Graph empty2 = parse_edge_list("2\n");
  CHECK(empty2.n == 2);
  CHECK(empty2.edges.empty());

  Graph implicit = parse_edge_list("1 2\n2 5\n");
  CHECK(implicit.n == 5);

  Graph commented = parse_edge_list("# a triangle\n3\n1 2 # edge\n2 3\n1 3\n");
  CHECK(commented.edges.size() == 3);

  Graph weighted = parse_edge_list("3\n1 2\nw 1 2/3\nw 3 -1\n");
  REQUIRE(weighted.has_weights());
  CHECK(weighted.weight(1) == Rational(2) / Rational(3));
  CHECK(weighted.weight(2) == Rational(1));
  CHECK(weighted.weight(3) == Rational(-1));
}

TEST_CASE("parse_edge_list: errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_edge_list("3\n1 1\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_edge_list("3\n1 2\n1 2\n"), doctest::Contains("duplicate edge"), ParseError);
  CHECK_THROWS_WITH_AS(parse_edge_list("2\n1 5\n"), doctest::Contains("out of range"), ParseError);
  CHECK_THROWS_WITH_AS(parse_edge_list("3\n1 2 3\n"), doctest::Contains("malformed"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3\nx y\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3\nw 1\n"), ParseError);
}

TEST_CASE("edge list text round-trips") {
  Graph g = parse_edge_list("4\n1 2\n3 4\nw 2 5/7\n");
  Graph back = parse_edge_list(to_edge_list_text(g));
  CHECK(back == g);
}

TEST_CASE("generate: families and determinism") {
  Graph k5 = generate("kn:5", 0);
  CHECK(k5.n == 5);
  CHECK(k5.edges.size() == 10);

  Graph p3 = generate("path:3", 0);
  CHECK(p3.edges == std::vector<Edge>{{1, 2}, {2, 3}});

  Graph c4 = generate("cycle:4", 0);
  CHECK(c4.edges.size() == 4);

  Graph a = generate("gnp:6:0.5", 7);
  Graph b = generate("gnp:6:0.5", 7);
  CHECK(a == b);
  Graph c = generate("gnp:6:0.5", 8);
  CHECK(a.n == c.n);  // same family, different seed: usually different edges

  CHECK_THROWS_AS(generate("frob:3", 0), std::invalid_argument);
  CHECK_THROWS_AS(generate("gnp:6:1.5", 0), std::invalid_argument);
  CHECK_THROWS_AS(generate("cycle:2", 0), std::invalid_argument);
}

TEST_CASE("enumerate_k_cliques: examples and ordering") {
  Graph k4 = generate("kn:4", 0);
  CliqueSet cs = enumerate_k_cliques(k4, 3);
  REQUIRE(cs.size() == 4);
  CHECK(cs.cliques[0] == std::vector<int>{1, 2, 3});
  CHECK(cs.cliques[1] == std::vector<int>{1, 2, 4});
  CHECK(cs.cliques[2] == std::vector<int>{1, 3, 4});
  CHECK(cs.cliques[3] == std::vector<int>{2, 3, 4});

  CHECK(enumerate_k_cliques(generate("path:3", 0), 3).size() == 0);
  CHECK(enumerate_k_cliques(generate("kn:5", 0), 3).size() == 10);
  CHECK(enumerate_k_cliques(generate("kn:6", 0), 4).size() == 15);
  CHECK_THROWS_AS(enumerate_k_cliques(k4, 2), std::invalid_argument);
}

TEST_CASE("clique counts match brute force on random graphs") {
  XorShift64Star rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(5));  // 4..8
    Graph g = generate("gnp:" + std::to_string(n) + ":0.5", 1000 + trial);
    for (int k = 3; k <= 4; ++k)
      CHECK(static_cast<int>(enumerate_k_cliques(g, k).size()) == brute_clique_count(g, k));
  }
}

TEST_CASE("decompose: examples and exact partition") {
  Graph k3 = generate("kn:3", 0);
  GraphDecomposition d = decompose(k3, enumerate_k_cliques(k3, 3));
  CHECK(d.v_delta == std::vector<int>{1, 2, 3});
  CHECK(d.v_gamma.empty());
  CHECK(d.e_delta.size() == 3);

  Graph p3 = generate("path:3", 0);
  GraphDecomposition dp = decompose(p3, enumerate_k_cliques(p3, 3));
  CHECK(dp.v_delta.empty());
  CHECK(dp.v_gamma == std::vector<int>{1, 2, 3});
  CHECK(dp.e_gamma.size() == 2);

  Graph tp = parse_edge_list("4\n1 2\n1 3\n2 3\n3 4\n");  // triangle + pendant edge
  GraphDecomposition dt = decompose(tp, enumerate_k_cliques(tp, 3));
  CHECK(dt.v_delta == std::vector<int>{1, 2, 3});
  CHECK(dt.v_gamma == std::vector<int>{4});
  CHECK(dt.e_delta_gamma == std::vector<Edge>{{3, 4}});

  XorShift64Star rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = generate("gnp:7:0.4", 50 + trial);
    GraphDecomposition dd = decompose(g, enumerate_k_cliques(g, 3));
    CHECK(dd.v_delta.size() + dd.v_gamma.size() == static_cast<std::size_t>(g.n));
    CHECK(dd.e_delta.size() + dd.e_gamma.size() + dd.e_delta_gamma.size() == g.edges.size());
  }
}

TEST_CASE("every_vertex_in_clique") {
  Graph k5 = generate("kn:5", 0);
  CHECK(every_vertex_in_clique(k5, enumerate_k_cliques(k5, 3)));
  Graph p3 = generate("path:3", 0);
  CHECK_FALSE(every_vertex_in_clique(p3, enumerate_k_cliques(p3, 3)));
  Graph tp = parse_edge_list("4\n1 2\n1 3\n2 3\n3 4\n");
  CHECK_FALSE(every_vertex_in_clique(tp, enumerate_k_cliques(tp, 3)));
}

TEST_CASE("coherence graph: closed and open similarity") {
  Graph k4 = generate("kn:4", 0);
  CoherenceGraph closed = coherence_graph(k4, SimilarityRule::Closed);
  CHECK(closed.components.size() == 1);
  CHECK(closed.comp_complete[0]);

  CoherenceGraph open = coherence_graph(k4, SimilarityRule::Open);
  CHECK(open.components.size() == 4);  // N(a) = V \ {a} all differ

  Graph p3 = generate("path:3", 0);
  CoherenceGraph cp = coherence_graph(p3, SimilarityRule::Open);
  REQUIRE(cp.components.size() == 2);
  CHECK(cp.components[0] == std::vector<int>{1, 3});
  CHECK(cp.components[1] == std::vector<int>{2});
  CHECK(cp.comp_edges.size() == 1);

  Graph edgeless = parse_edge_list("3\n");
  CoherenceGraph ce = coherence_graph(edgeless, SimilarityRule::Closed);
  CHECK(ce.components.size() == 3);  // closed neighborhoods {v} all differ
  CoherenceGraph ceo = coherence_graph(edgeless, SimilarityRule::Open);
  CHECK(ceo.components.size() == 1);
  CHECK(ceo.comp_edges.empty());
  CHECK(ceo.all_components_complete() == false);  // 3 mutually non-adjacent vertices

  // classes partition the vertex set (equivalence relation)
  XorShift64Star rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = generate("gnp:7:0.5", 200 + trial);
    for (SimilarityRule rule : {SimilarityRule::Closed, SimilarityRule::Open}) {
      CoherenceGraph cg = coherence_graph(g, rule);
      std::vector<bool> seen(g.n + 1, false);
      for (const auto& comp : cg.components)
        for (int v : comp) {
          CHECK_FALSE(seen[v]);
          seen[v] = true;
        }
      for (int v = 1; v <= g.n; ++v) CHECK(seen[v]);
    }
  }
}

TEST_CASE("canonical form: invariance and separation") {
  Graph k3 = generate("kn:3", 0);
  CanonicalForm base = canonical_form(k3);
  XorShift64Star rng(23);
  for (int t = 0; t < 5; ++t) {
    Graph perm = permute_graph(k3, random_permutation(3, rng));
    CHECK(canonical_form(perm).edges == base.edges);
  }
  CHECK(canonical_form(generate("path:3", 0)).edges != base.edges);

  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng.next_below(4));  // 4..7
    Graph g = generate("gnp:" + std::to_string(n) + ":0.5", 300 + trial);
    std::vector<int> sigma = random_permutation(n, rng);
    Graph h = permute_graph(g, sigma);
    CanonicalForm cg = canonical_form(g);
    CanonicalForm ch = canonical_form(h);
    CHECK(cg.edges == ch.edges);
    // the labeling witnesses: relabeling g by cg.labeling gives exactly cg.edges
    Graph wg = permute_graph(g, cg.labeling);
    CHECK(wg.edges == cg.edges);
  }

  // two structurally different graphs separate
  Graph c6 = generate("cycle:6", 0);
  Graph p6 = generate("path:6", 0);
  CHECK(canonical_form(c6).edges != canonical_form(p6).edges);

  // exhaustive: invariance under every permutation of a 4-vertex graph
  Graph tp = parse_edge_list("4\n1 2\n1 3\n2 3\n3 4\n");
  CanonicalForm ct = canonical_form(tp);
  std::vector<int> sigma{1, 2, 3, 4};
  do {
    CHECK(canonical_form(permute_graph(tp, sigma)).edges == ct.edges);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("canonical form guard and env override") {
  Graph big = generate("path:11", 0);
  CHECK_THROWS_AS(canonical_form(big), std::invalid_argument);
  setenv("LIEGRAPH_MAX_N", "11", 1);
  CHECK(max_canonical_n() == 11);
  CHECK_NOTHROW(canonical_form(big));
  unsetenv("LIEGRAPH_MAX_N");
  CHECK(max_canonical_n() == 10);
}

TEST_CASE("automorphisms and orbits") {
  Graph k4 = generate("kn:4", 0);
  CHECK(automorphisms(k4).size() == 24);
  SymmetryOrbits so = symmetry_orbits(k4, enumerate_k_cliques(k4, 3));
  CHECK(so.n_vertex_orbits == 1);
  CHECK(so.n_edge_orbits == 1);
  CHECK(so.n_clique_orbits == 1);

  Graph p3 = generate("path:3", 0);
  CHECK(automorphisms(p3).size() == 2);
  SymmetryOrbits sp = symmetry_orbits(p3, enumerate_k_cliques(p3, 3));
  CHECK(sp.n_vertex_orbits == 2);
  CHECK(sp.n_edge_orbits == 1);
}

TEST_CASE("xorshift64* is deterministic") {
  XorShift64Star a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  XorShift64Star z(0);
  CHECK(z.next() != 0);  // zero seed remaps to a fixed nonzero state
}
