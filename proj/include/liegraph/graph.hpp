#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liegraph/field.hpp"

namespace liegraph {

using Edge = std::pair<int, int>;  // (i, j) with i < j, 1-based

// Simple undirected graph. Vertices are labeled 1..n everywhere; the edge
// list is kept sorted and duplicate-free. Values are immutable once built.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;                      // sorted lexicographically
  std::optional<std::vector<Rational>> weights;  // per-vertex, length n

  Graph() = default;
  Graph(int n_, std::vector<Edge> edges_, std::optional<std::vector<Rational>> weights_ = std::nullopt);

  bool adjacent(int i, int j) const;
  std::vector<int> neighbors(int i) const;
  int degree(int i) const;
  bool has_weights() const { return weights.has_value(); }
  Rational weight(int i) const { return weights ? (*weights)[i - 1] : Rational(1); }

  bool operator==(const Graph& o) const { return n == o.n && edges == o.edges && weights == o.weights; }
};

struct CliqueSet {
  int k = 3;
  std::vector<std::vector<int>> cliques;  // strictly increasing k-tuples, lex order
  std::size_t size() const { return cliques.size(); }
};

struct GraphDecomposition {
  std::vector<int> v_delta, v_gamma;       // sorted vertex lists
  std::vector<Edge> e_delta, e_gamma, e_delta_gamma;
};

enum class SimilarityRule { Closed, Open };  // N[a]=N[b] vs N(a)=N(b)

struct CoherenceGraph {
  std::vector<std::vector<int>> components;   // sorted classes, sorted by least vertex
  std::vector<std::pair<int, int>> comp_edges;  // class-index pairs, i<j
  std::vector<bool> comp_complete;            // induced subgraph on class is complete
  SimilarityRule rule = SimilarityRule::Closed;
  bool all_components_complete() const;
};

struct CanonicalForm {
  std::vector<int> labeling;   // labeling[old-1] = new label (1-based)
  std::vector<Edge> edges;     // canonical edge set
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Edge-list text format: '#' comments, optional leading vertex count, "i j"
// edge lines, optional "w i value" weight lines.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
Graph parse_edge_list_file(const std::string& path);

// Canonical text form of a graph (round-trips through parse_edge_list).
std::string to_edge_list_text(const Graph& g);

// Deterministic 64-bit xorshift* generator used for all seeded randomness.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  double next_unit();                 // uniform in [0,1)
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t s_;
};

// Families: "kn:N", "path:N", "cycle:N", "gnp:N:P". Deterministic per
// (family, parameters, seed).
Graph generate(const std::string& family_spec, std::uint64_t seed);

CliqueSet enumerate_k_cliques(const Graph& g, int k);

GraphDecomposition decompose(const Graph& g, const CliqueSet& cliques);

bool every_vertex_in_clique(const Graph& g, const CliqueSet& cliques);

CoherenceGraph coherence_graph(const Graph& g, SimilarityRule rule = SimilarityRule::Closed);

// Exhaustive canonical labeling; guarded at n <= max_canonical_n() vertices
// (or an explicit guard).
CanonicalForm canonical_form(const Graph& g);
CanonicalForm canonical_form(const Graph& g, int guard_n);
int max_canonical_n();  // 10, overridable via LIEGRAPH_MAX_N

Graph permute_graph(const Graph& g, const std::vector<int>& sigma);  // sigma[old-1] = new

// All automorphisms of g (as vertex relabelings); exhaustive, desk scale.
std::vector<std::vector<int>> automorphisms(const Graph& g);

// Orbit partitions under the automorphism group.
struct SymmetryOrbits {
  std::vector<int> vertex_orbit;                // per vertex (0-based orbit id)
  std::vector<int> edge_orbit;                  // per edge index
  std::vector<int> clique_orbit;                // per clique index
  int n_vertex_orbits = 0, n_edge_orbits = 0, n_clique_orbits = 0;
};
SymmetryOrbits symmetry_orbits(const Graph& g, const CliqueSet& cliques);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace liegraph
