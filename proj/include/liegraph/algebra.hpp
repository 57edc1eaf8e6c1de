#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liegraph/graph.hpp"
#include "liegraph/linalg.hpp"
#include "liegraph/subspace.hpp"

namespace liegraph {

class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class BasisKind { Vertex, Edge, Clique };

struct BasisElement {
  BasisKind kind;
  std::vector<int> verts;  // 1, 2 or k vertices, strictly increasing

  std::string label() const {
    if (kind == BasisKind::Vertex) return "e" + std::to_string(verts[0]);
    if (kind == BasisKind::Edge) return "e" + std::to_string(verts[0]) + "^e" + std::to_string(verts[1]);
    std::string s = "e(";
    for (std::size_t i = 0; i < verts.size(); ++i) s += (i ? "," : "") + std::to_string(verts[i]);
    return s + ")";
  }
};

template <class K>
struct JacobiReport {
  bool ok = true;
  int a = -1, b = -1, c = -1;  // first failing basis triple, when !ok
};

template <class K>
struct IsomorphismResult {
  bool ok = false;
  Matrix<K> map;        // dst-coordinates of the images of src basis vectors
  std::string witness;  // first failing edge/clique when !ok
};

struct AdjointProfile {
  // (eigenvalue, multiplicity) pairs of one clique adjoint, sorted by value.
  std::vector<std::pair<std::string, int>> eigen_multiplicities;
  bool operator==(const AdjointProfile&) const = default;
  bool operator<(const AdjointProfile& o) const { return eigen_multiplicities < o.eigen_multiplicities; }
};

struct Fingerprint {
  int n_isolated = 0;
  int dim_v = 0, dim_w = 0, dim_u = 0;
  int dim_derived = 0;      // dim g'
  int dim_derived2 = 0;     // dim g^(2)
  int dim_derived3 = 0;     // dim g^(3)
  int dim_lcs_stable = 0;   // stabilized lower central dimension
  int dim_center = 0;
  int dim_nilradical = 0;
  int dim_derivations = 0;
  std::vector<AdjointProfile> clique_profiles;  // sorted multiset
  bool operator==(const Fingerprint&) const = default;
};

// The solvable Lie algebra g = V + W + U attached to a graph: V spanned by
// vertices, W by edges (alternating squares), U by the k-cliques. Basis
// order is vertices ascending, then edges lexicographic, then cliques
// lexicographic; every matrix and fingerprint references this order.
template <class K>
class GraphLieAlgebra {
 public:
  static GraphLieAlgebra build(const Graph& g, int k = 3,
                               std::optional<std::vector<K>> weights = std::nullopt);

  const Graph& graph() const { return graph_; }
  int clique_k() const { return k_; }
  const CliqueSet& cliques() const { return cliques_; }
  const std::vector<K>& weights() const { return weights_; }
  bool unit_weights() const { return unit_weights_; }

  int dim() const { return dim_; }
  int dim_v() const { return graph_.n; }
  int dim_w() const { return static_cast<int>(graph_.edges.size()); }
  int dim_u() const { return static_cast<int>(cliques_.cliques.size()); }
  int vertex_index(int v) const { return v - 1; }
  int edge_index(const Edge& e) const { return edge_index_.at(e); }
  int clique_index(const std::vector<int>& t) const { return clique_index_.at(t); }
  const BasisElement& basis(int i) const { return basis_[i]; }
  std::uint64_t characteristic() const { return char_; }

  // Bracket of two basis elements: (target index, coefficient), target -1
  // when zero. The table stores each unordered pair once; the antisymmetric
  // image is synthesized here.
  std::pair<int, K> bracket_basis(int a, int b) const {
    if (a == b) return {-1, K(0)};
    if (a < b) {
      const auto& e = table_[static_cast<std::size_t>(a) * dim_ + b];
      return {e.first, e.second};
    }
    const auto& e = table_[static_cast<std::size_t>(b) * dim_ + a];
    return {e.first, K(0) - e.second};
  }

  std::vector<K> basis_vector(int i) const {
    std::vector<K> v(dim_, K(0));
    v[i] = unit_;
    return v;
  }

  std::vector<K> bracket(const std::vector<K>& x, const std::vector<K>& y) const;
  Matrix<K> adjoint_matrix(const std::vector<K>& x) const;

  JacobiReport<K> verify_jacobi() const;

  Matrix<K> clique_incidence_matrix() const;

  Subspace<K> center_formula() const;        // guarded: char != 2, weighted conditions
  Subspace<K> center_formula_span() const;   // the unproven span, no guards
  Subspace<K> center_oracle() const;         // joint kernel of all adjoints, any field
  Subspace<K> nilradical() const;            // guarded: char != 2, weighted conditions
  bool certify_nilpotent(const Subspace<K>& s) const;
  bool is_ideal(const Subspace<K>& s) const;

  std::vector<Subspace<K>> derived_series() const;
  std::vector<Subspace<K>> lower_central_series() const;
  bool verify_series_closed_form() const;

  bool trace_identity_check(const std::vector<K>& z) const;

  Subspace<K> derivation_space() const;  // flattened dim*dim matrices, row-major
  bool is_derivation(const Matrix<K>& d) const;

  bool completely_solvable_check() const;

  Fingerprint fingerprint() const;

  Subspace<K> span_of(const std::vector<int>& basis_indices) const;
  Subspace<K> bracket_span(const Subspace<K>& a, const Subspace<K>& b) const;
  Subspace<K> full_space() const { return Subspace<K>::full(dim_); }

  // Test hook: overwrite one structure constant to exercise fault paths.
  void inject_bracket(int a, int b, int target, const K& coeff) {
    if (a > b) std::swap(a, b);
    table_[static_cast<std::size_t>(a) * dim_ + b] = {target, coeff};
  }

 private:
  Graph graph_;
  int k_ = 3;
  CliqueSet cliques_;
  std::vector<K> weights_;
  std::uint64_t char_ = 0;
  K unit_ = K(1);  // multiplicative unit carrying the field modulus
  bool unit_weights_ = true;
  int dim_ = 0;
  std::vector<BasisElement> basis_;
  std::map<Edge, int> edge_index_;
  std::map<std::vector<int>, int> clique_index_;
  std::vector<std::pair<int, K>> table_;  // (target, coeff) for a < b, -1 = zero

  void check_weighted_center_conditions() const;
};

template <class K>
IsomorphismResult<K> isomorphism_from_permutation(const GraphLieAlgebra<K>& src,
                                                  const GraphLieAlgebra<K>& dst,
                                                  const std::vector<int>& sigma);

// Kernel of the Leibniz system for a bracket given as a functor
// (a, b) -> sparse coefficient vector over basis indices; shared by the
// graph algebras and the restricted metric algebras.
template <class K, class BracketFn>
Subspace<K> leibniz_kernel(int dim, BracketFn&& bracket);

// ---------------------------------------------------------------------------
// implementation

template <class K>
GraphLieAlgebra<K> GraphLieAlgebra<K>::build(const Graph& g, int k,
                                             std::optional<std::vector<K>> weights) {
  if (k < 3) throw std::invalid_argument("clique size must be >= 3");
  GraphLieAlgebra<K> alg;
  alg.graph_ = g;
  alg.k_ = k;
  alg.cliques_ = enumerate_k_cliques(g, k);

  if (weights) {
    if (static_cast<int>(weights->size()) != g.n)
      throw std::invalid_argument("weight vector length must equal vertex count");
    alg.weights_ = std::move(*weights);
  } else if (g.weights) {
    if constexpr (field_is_prime<K>::value)
      throw std::invalid_argument(
          "prime-field algebras need explicit weights built with Fp::make");
    else
      for (const auto& w : *g.weights) alg.weights_.push_back(scalar_from_string<K>(scalar_str(w)));
  } else {
    alg.weights_.assign(g.n, K(1));
  }
  if constexpr (field_is_prime<K>::value) {
    for (const auto& w : alg.weights_)
      if (field_char(w) != 0) alg.char_ = field_char(w);
    if (alg.char_ == 0)
      throw std::invalid_argument("prime-field algebras need weights carrying a modulus");
    for (auto& w : alg.weights_) w = Fp::make(w.v, alg.char_);
    alg.unit_ = Fp::make(1, alg.char_);
  }
  alg.unit_weights_ = true;
  for (const auto& w : alg.weights_)
    if (!(w == K(1))) alg.unit_weights_ = false;

  for (int v = 1; v <= g.n; ++v) alg.basis_.push_back({BasisKind::Vertex, {v}});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    alg.edge_index_[g.edges[i]] = static_cast<int>(alg.basis_.size());
    alg.basis_.push_back({BasisKind::Edge, {g.edges[i].first, g.edges[i].second}});
  }
  for (const auto& t : alg.cliques_.cliques) {
    alg.clique_index_[t] = static_cast<int>(alg.basis_.size());
    alg.basis_.push_back({BasisKind::Clique, t});
  }
  alg.dim_ = static_cast<int>(alg.basis_.size());
  alg.table_.assign(static_cast<std::size_t>(alg.dim_) * alg.dim_, {-1, K(0)});

  auto set_entry = [&](int a, int b, int target, const K& c) {
    // stored for the canonical order a < b
    alg.table_[static_cast<std::size_t>(a) * alg.dim_ + b] = {target, c};
  };

  // [e_i, e_j] = e_i ^ e_j for edges (vertices precede edges in the order).
  for (const auto& e : g.edges)
    set_entry(e.first - 1, e.second - 1, alg.edge_index_.at(e), alg.unit_);

  for (const auto& t : alg.cliques_.cliques) {
    int ct = alg.clique_index_.at(t);
    auto in_t = [&](int v) { return std::binary_search(t.begin(), t.end(), v); };
    // [e_a, e_T] = w_a e_a for a in T.
    for (int a : t) set_entry(a - 1, ct, a - 1, alg.weights_[a - 1]);
    // [e_a ^ e_b, e_T] = (sum of weights over {a,b} ∩ T) e_a ^ e_b.
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const auto& [a, b] = g.edges[ei];
      K w = K(0);
      if (in_t(a)) w += alg.weights_[a - 1];
      if (in_t(b)) w += alg.weights_[b - 1];
      bool meets = in_t(a) || in_t(b);
      if (meets) set_entry(static_cast<int>(g.n + ei), ct, static_cast<int>(g.n + ei), w);
    }
  }
  return alg;
}

template <class K>
std::vector<K> GraphLieAlgebra<K>::bracket(const std::vector<K>& x, const std::vector<K>& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw std::invalid_argument("bracket: element dimension mismatch");
  std::vector<K> r(dim_, K(0));
  for (int a = 0; a < dim_; ++a) {
    if (is_zero(x[a])) continue;
    for (int b = 0; b < dim_; ++b) {
      if (is_zero(y[b])) continue;
      auto [t, c] = bracket_basis(a, b);
      if (t >= 0 && !is_zero(c)) r[t] += x[a] * y[b] * c;
    }
  }
  return r;
}

template <class K>
Matrix<K> GraphLieAlgebra<K>::adjoint_matrix(const std::vector<K>& x) const {
  Matrix<K> m(dim_, dim_);
  for (int b = 0; b < dim_; ++b)
    for (int a = 0; a < dim_; ++a) {
      if (is_zero(x[a])) continue;
      auto [t, c] = bracket_basis(a, b);
      if (t >= 0 && !is_zero(c)) m.at(t, b) += x[a] * c;
    }
  return m;
}

template <class K>
JacobiReport<K> GraphLieAlgebra<K>::verify_jacobi() const {
  auto nested = [&](int a, int b, int c, std::vector<K>& acc) {
    // acc += [x_a, [x_b, x_c]]
    auto [t, k1] = bracket_basis(b, c);
    if (t < 0 || is_zero(k1)) return;
    auto [u, k2] = bracket_basis(a, t);
    if (u < 0 || is_zero(k2)) return;
    acc[u] += k1 * k2;
  };
  std::vector<K> acc(dim_, K(0));
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b)
      for (int c = b + 1; c < dim_; ++c) {
        std::fill(acc.begin(), acc.end(), K(0));
        nested(a, b, c, acc);
        nested(b, c, a, acc);
        nested(c, a, b, acc);
        if (!is_zero_vec(acc)) return {false, a, b, c};
      }
  return {};
}

template <class K>
Matrix<K> GraphLieAlgebra<K>::clique_incidence_matrix() const {
  Matrix<K> a(graph_.n, dim_u());
  for (int c = 0; c < dim_u(); ++c)
    for (int v : cliques_.cliques[c]) a.at(v - 1, c) = unit_;
  return a;
}

template <class K>
void GraphLieAlgebra<K>::check_weighted_center_conditions() const {
  for (int v = 1; v <= graph_.n; ++v)
    if (is_zero(weights_[v - 1]))
      throw PreconditionError("zero vertex weight at " + std::to_string(v) +
                              ": the center/nilradical formulas require nonzero weights; use center_oracle");
  for (const auto& [i, j] : graph_.edges) {
    K s = weights_[i - 1] + weights_[j - 1];
    if (is_zero(s))
      throw PreconditionError("weights of edge (" + std::to_string(i) + "," + std::to_string(j) +
                              ") sum to zero; use center_oracle");
  }
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::center_formula_span() const {
  std::vector<std::vector<K>> rows;
  GraphDecomposition dec = decompose(graph_, cliques_);
  for (int v = 1; v <= graph_.n; ++v)
    if (graph_.degree(v) == 0) rows.push_back(basis_vector(vertex_index(v)));
  for (const auto& e : dec.e_gamma) rows.push_back(basis_vector(edge_index(e)));
  Matrix<K> ka = kernel(clique_incidence_matrix());
  for (int r = 0; r < ka.rows(); ++r) {
    std::vector<K> v(dim_, K(0));
    for (int c = 0; c < dim_u(); ++c) v[dim_v() + dim_w() + c] = ka.at(r, c);
    rows.push_back(std::move(v));
  }
  return Subspace<K>::from_vectors(rows, dim_);
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::center_formula() const {
  if (characteristic() == 2)
    throw PreconditionError("center formula is not valid in characteristic 2; use center_oracle");
  if (!unit_weights_) check_weighted_center_conditions();
  return center_formula_span();
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::center_oracle() const {
  // {l : [l, b] = 0 for every basis b} as the joint kernel of all adjoints.
  Matrix<K> stacked(dim_ * dim_, dim_);
  for (int b = 0; b < dim_; ++b)
    for (int a = 0; a < dim_; ++a) {
      auto [t, c] = bracket_basis(a, b);
      if (t >= 0 && !is_zero(c)) stacked.at(b * dim_ + t, a) += c;
    }
  return Subspace<K>::from_rows(kernel(stacked));
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::nilradical() const {
  if (characteristic() == 2)
    throw PreconditionError("nilradical formula is not valid in characteristic 2");
  if (!unit_weights_) check_weighted_center_conditions();
  std::vector<std::vector<K>> rows;
  for (int i = 0; i < dim_v() + dim_w(); ++i) rows.push_back(basis_vector(i));
  Matrix<K> ka = kernel(clique_incidence_matrix());
  for (int r = 0; r < ka.rows(); ++r) {
    std::vector<K> v(dim_, K(0));
    for (int c = 0; c < dim_u(); ++c) v[dim_v() + dim_w() + c] = ka.at(r, c);
    rows.push_back(std::move(v));
  }
  return Subspace<K>::from_vectors(rows, dim_);
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::bracket_span(const Subspace<K>& a, const Subspace<K>& b) const {
  std::vector<std::vector<K>> rows;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      std::vector<K> v = bracket(a.basis_vector(i), b.basis_vector(j));
      if (!is_zero_vec(v)) rows.push_back(std::move(v));
    }
  return Subspace<K>::from_vectors(rows, dim_);
}

template <class K>
bool GraphLieAlgebra<K>::certify_nilpotent(const Subspace<K>& s) const {
  Subspace<K> cur = s;
  for (int step = 0; step <= dim_ + 1; ++step) {
    if (cur.dim() == 0) return true;
    Subspace<K> next = bracket_span(s, cur);
    if (next == cur) return false;  // stalled above zero
    cur = next;
  }
  return false;
}

template <class K>
bool GraphLieAlgebra<K>::is_ideal(const Subspace<K>& s) const {
  return s.contains(bracket_span(full_space(), s));
}

template <class K>
std::vector<Subspace<K>> GraphLieAlgebra<K>::derived_series() const {
  std::vector<Subspace<K>> chain;
  Subspace<K> cur = bracket_span(full_space(), full_space());
  chain.push_back(cur);
  while (true) {
    Subspace<K> next = bracket_span(cur, cur);
    if (next == cur) break;
    chain.push_back(next);
    cur = next;
  }
  return chain;
}

template <class K>
std::vector<Subspace<K>> GraphLieAlgebra<K>::lower_central_series() const {
  std::vector<Subspace<K>> chain;
  Subspace<K> cur = bracket_span(full_space(), full_space());
  chain.push_back(cur);
  while (true) {
    Subspace<K> next = bracket_span(full_space(), cur);
    if (next == cur) break;
    chain.push_back(next);
    cur = next;
  }
  return chain;
}

template <class K>
bool GraphLieAlgebra<K>::verify_series_closed_form() const {
  if (!unit_weights_) {
    for (int v = 1; v <= graph_.n; ++v)
      if (is_zero(weights_[v - 1])) return false;  // closed forms proved only for nonzero weights
  }
  GraphDecomposition dec = decompose(graph_, cliques_);
  std::vector<int> idx;
  // (a) g' = span{e_a : a in V_Delta} + span{all edges}
  for (int v : dec.v_delta) idx.push_back(vertex_index(v));
  for (std::size_t e = 0; e < graph_.edges.size(); ++e) idx.push_back(dim_v() + static_cast<int>(e));
  Subspace<K> closed_d1 = span_of(idx);
  // (b) g^(2) = span{edges inside E_Delta}
  idx.clear();
  for (const auto& e : dec.e_delta) idx.push_back(edge_index(e));
  Subspace<K> closed_d2 = span_of(idx);
  // (d) g^k = span{V_Delta} + span{E_Delta ∪ E_Delta,Gamma} for k >= 2
  idx.clear();
  for (int v : dec.v_delta) idx.push_back(vertex_index(v));
  for (const auto& e : dec.e_delta) idx.push_back(edge_index(e));
  for (const auto& e : dec.e_delta_gamma) idx.push_back(edge_index(e));
  Subspace<K> closed_lcs = span_of(idx);

  std::vector<Subspace<K>> ds = derived_series();
  if (ds[0] != closed_d1) return false;
  Subspace<K> d2 = ds.size() > 1 ? ds[1] : bracket_span(ds[0], ds[0]);
  if (d2 != closed_d2) return false;
  Subspace<K> d3 = ds.size() > 2 ? ds[2] : bracket_span(d2, d2);
  if (d3.dim() != 0) return false;  // (c)

  std::vector<Subspace<K>> lcs = lower_central_series();
  if (lcs[0] != closed_d1) return false;
  if (lcs.back() != closed_lcs) return false;
  if (lcs.size() > 2) return false;  // must stabilize by index 2

  // Corollary: abelian extension of a nilpotent algebra. The commutator
  // lands in the nilradical span and clique elements commute pairwise.
  std::vector<std::vector<K>> nr_rows;
  for (int i = 0; i < dim_v() + dim_w(); ++i) nr_rows.push_back(basis_vector(i));
  Matrix<K> ka = kernel(clique_incidence_matrix());
  for (int r = 0; r < ka.rows(); ++r) {
    std::vector<K> v(dim_, K(0));
    for (int c = 0; c < dim_u(); ++c) v[dim_v() + dim_w() + c] = ka.at(r, c);
    nr_rows.push_back(std::move(v));
  }
  Subspace<K> nr_span = Subspace<K>::from_vectors(nr_rows, dim_);
  if (!nr_span.contains(ds[0])) return false;
  for (int s = dim_v() + dim_w(); s < dim_; ++s)
    for (int t = s + 1; t < dim_; ++t) {
      auto [tg, c] = bracket_basis(s, t);
      if (tg >= 0 && !is_zero(c)) return false;
    }
  return true;
}

template <class K>
bool GraphLieAlgebra<K>::trace_identity_check(const std::vector<K>& z) const {
  if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("element dimension mismatch");
  for (int i = 0; i < dim_v() + dim_w(); ++i)
    if (!is_zero(z[i])) throw std::invalid_argument("element is not in U");
  Matrix<K> a = clique_incidence_matrix();
  std::vector<K> cliq(z.begin() + dim_v() + dim_w(), z.end());
  if (!is_zero_vec(a.apply(cliq))) throw std::invalid_argument("element is not in ker(A)");
  K s = K(0);
  for (const auto& c : cliq) s += c;
  return is_zero(s);
}

template <class K, class BracketFn>
Subspace<K> leibniz_kernel(int dim, BracketFn&& bracket) {
  // Unknowns: D[r][c] flattened row-major at r*dim + c. For each basis pair
  // (a, b) and output coordinate q:
  //   sum_t c_ab^t D[q][t] - sum_m c_mb^q D[m][a] - sum_m c_am^q D[m][b] = 0.
  using Row = std::vector<std::pair<int, K>>;
  const int cols = dim * dim;

  std::vector<Row> pivots(cols);       // pivot rows keyed by leading column
  std::vector<bool> has_pivot(cols, false);

  auto reduce_insert = [&](Row row) {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    // merge duplicate columns
    Row merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.push_back({c, v});
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return is_zero(e.second); }),
                 merged.end());
    while (!merged.empty()) {
      int lead = merged[0].first;
      if (!has_pivot[lead]) {
        K inv = K(1) / merged[0].second;
        for (auto& [c, v] : merged) v *= inv;
        pivots[lead] = std::move(merged);
        has_pivot[lead] = true;
        return;
      }
      // merged -= merged[0].second * pivots[lead]
      K f = merged[0].second;
      const Row& p = pivots[lead];
      Row next;
      std::size_t i = 0, j = 0;
      while (i < merged.size() || j < p.size()) {
        if (j >= p.size() || (i < merged.size() && merged[i].first < p[j].first)) {
          next.push_back(merged[i++]);
        } else if (i >= merged.size() || p[j].first < merged[i].first) {
          next.push_back({p[j].first, K(0) - f * p[j].second});
          ++j;
        } else {
          K v = merged[i].second - f * p[j].second;
          if (!is_zero(v)) next.push_back({merged[i].first, v});
          ++i;
          ++j;
        }
      }
      merged = std::move(next);
    }
  };

  struct Hit {
    int other, target;
    K coeff;
  };
  std::vector<std::vector<Hit>> hits_right(dim), hits_left(dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (const auto& [t, c] : bracket(a, b)) {
        if (is_zero(c)) continue;
        hits_right[b].push_back({a, t, c});  // [a,b] with b fixed
        hits_left[a].push_back({b, t, c});   // [a,b] with a fixed
      }

  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      std::vector<Row> eq(dim);
      for (const auto& [tab, cab] : bracket(a, b))
        if (!is_zero(cab))
          for (int q = 0; q < dim; ++q) eq[q].push_back({q * dim + tab, cab});
      for (const Hit& h : hits_right[b])  // [m, b] = c x_q  -> -c D[m][a]
        eq[h.target].push_back({h.other * dim + a, K(0) - h.coeff});
      for (const Hit& h : hits_left[a])  // [a, m] = c x_q  -> -c D[m][b]
        eq[h.target].push_back({h.other * dim + b, K(0) - h.coeff});
      for (auto& row : eq)
        if (!row.empty()) reduce_insert(std::move(row));
    }

  // Back-substitute to full RREF.
  std::vector<int> pivot_cols;
  for (int c = 0; c < cols; ++c)
    if (has_pivot[c]) pivot_cols.push_back(c);
  for (int i = static_cast<int>(pivot_cols.size()) - 1; i >= 0; --i) {
    int pc = pivot_cols[i];
    Row& row = pivots[pc];
    Row out;
    out.push_back(row[0]);
    std::vector<std::pair<int, K>> pending(row.begin() + 1, row.end());
    while (!pending.empty()) {
      auto [c, v] = pending.front();
      pending.erase(pending.begin());
      if (is_zero(v)) continue;
      if (has_pivot[c] && c != pc) {
        for (std::size_t t = 1; t < pivots[c].size(); ++t)
          pending.push_back({pivots[c][t].first, K(0) - v * pivots[c][t].second});
      } else {
        out.push_back({c, v});
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Row merged;
    for (auto& [c, v] : out) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.push_back({c, v});
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return is_zero(e.second); }),
                 merged.end());
    row = std::move(merged);
  }

  // Kernel basis from the free columns.
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < cols; ++f) {
    if (has_pivot[f]) continue;
    std::vector<K> v(cols, K(0));
    v[f] = K(1);
    for (int pc : pivot_cols)
      for (std::size_t t = 1; t < pivots[pc].size(); ++t)
        if (pivots[pc][t].first == f) v[pc] = K(0) - pivots[pc][t].second;
    basis.push_back(std::move(v));
  }
  return Subspace<K>::from_vectors(basis, cols);
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::derivation_space() const {
  return leibniz_kernel<K>(dim_, [this](int a, int b) {
    auto [t, c] = bracket_basis(a, b);
    std::vector<std::pair<int, K>> sparse;
    if (t >= 0 && !is_zero(c)) sparse.push_back({t, c});
    return sparse;
  });
}

template <class K>
bool GraphLieAlgebra<K>::is_derivation(const Matrix<K>& d) const {
  if (d.rows() != dim_ || d.cols() != dim_) throw std::invalid_argument("derivation shape mismatch");
  // D[x,y] = [Dx, y] + [x, Dy] on all basis pairs
  for (int a = 0; a < dim_; ++a) {
    std::vector<K> da(dim_);
    for (int r = 0; r < dim_; ++r) da[r] = d.at(r, a);
    for (int b = a + 1; b < dim_; ++b) {
      std::vector<K> db(dim_);
      for (int r = 0; r < dim_; ++r) db[r] = d.at(r, b);
      auto [t, c] = bracket_basis(a, b);
      std::vector<K> lhs(dim_, K(0));
      if (t >= 0 && !is_zero(c)) {
        std::vector<K> dt(dim_);
        for (int r = 0; r < dim_; ++r) dt[r] = d.at(r, t);
        lhs = scaled_vec(dt, c);
      }
      std::vector<K> rhs = bracket(da, basis_vector(b));
      std::vector<K> rhs2 = bracket(basis_vector(a), db);
      for (int r = 0; r < dim_; ++r) rhs[r] += rhs2[r];
      for (int r = 0; r < dim_; ++r)
        if (!is_zero(lhs[r] - rhs[r])) return false;
    }
  }
  return true;
}

template <class K>
bool GraphLieAlgebra<K>::completely_solvable_check() const {
  for (const auto& t : cliques_.cliques) {
    int ct = clique_index_.at(t);
    Matrix<K> ad = adjoint_matrix(basis_vector(ct));
    auto in_t = [&](int v) { return std::binary_search(t.begin(), t.end(), v); };
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) {
        if (r != c) {
          if (!is_zero(ad.at(r, c))) return false;
          continue;
        }
        K expect = K(0);
        const BasisElement& be = basis_[c];
        if (be.kind == BasisKind::Vertex && in_t(be.verts[0]))
          expect = K(0) - weights_[be.verts[0] - 1];
        if (be.kind == BasisKind::Edge) {
          if (in_t(be.verts[0])) expect -= weights_[be.verts[0] - 1];
          if (in_t(be.verts[1])) expect -= weights_[be.verts[1] - 1];
        }
        if (!(ad.at(r, c) == expect)) return false;
      }
  }
  if (every_vertex_in_clique(graph_, cliques_)) {
    std::vector<int> idx;
    for (int i = 0; i < dim_v() + dim_w(); ++i) idx.push_back(i);
    if (derived_series()[0] != span_of(idx)) return false;
  }
  return true;
}

template <class K>
Subspace<K> GraphLieAlgebra<K>::span_of(const std::vector<int>& basis_indices) const {
  std::vector<std::vector<K>> rows;
  for (int i : basis_indices) rows.push_back(basis_vector(i));
  return Subspace<K>::from_vectors(rows, dim_);
}

template <class K>
Fingerprint GraphLieAlgebra<K>::fingerprint() const {
  if (characteristic() == 2) throw PreconditionError("fingerprint requires characteristic != 2");
  Fingerprint f;
  for (int v = 1; v <= graph_.n; ++v)
    if (graph_.degree(v) == 0) ++f.n_isolated;
  f.dim_v = dim_v();
  f.dim_w = dim_w();
  f.dim_u = dim_u();
  std::vector<Subspace<K>> ds = derived_series();
  auto ds_dim = [&](std::size_t i) { return i < ds.size() ? ds[i].dim() : ds.back().dim(); };
  f.dim_derived = ds_dim(0);
  f.dim_derived2 = ds_dim(1);
  f.dim_derived3 = ds_dim(2);
  f.dim_lcs_stable = lower_central_series().back().dim();
  f.dim_center = center_oracle().dim();
  f.dim_nilradical = nilradical().dim();
  f.dim_derivations = derivation_space().dim();
  for (const auto& t : cliques_.cliques) {
    Matrix<K> ad = adjoint_matrix(basis_vector(clique_index_.at(t)));
    std::map<std::string, int> mult;
    for (int i = 0; i < dim_; ++i) ++mult[scalar_str(ad.at(i, i))];
    AdjointProfile p;
    for (const auto& [val, cnt] : mult) p.eigen_multiplicities.push_back({val, cnt});
    std::sort(p.eigen_multiplicities.begin(), p.eigen_multiplicities.end());
    f.clique_profiles.push_back(std::move(p));
  }
  std::sort(f.clique_profiles.begin(), f.clique_profiles.end());
  return f;
}

template <class K>
IsomorphismResult<K> isomorphism_from_permutation(const GraphLieAlgebra<K>& src,
                                                  const GraphLieAlgebra<K>& dst,
                                                  const std::vector<int>& sigma) {
  const Graph& gs = src.graph();
  const Graph& gd = dst.graph();
  if (gs.n != gd.n) throw std::invalid_argument("vertex counts differ");
  if (static_cast<int>(sigma.size()) != gs.n) throw std::invalid_argument("permutation length mismatch");
  {
    std::vector<bool> hit(gs.n + 1, false);
    for (int v : sigma) {
      if (v < 1 || v > gs.n || hit[v]) throw std::invalid_argument("not a bijection of the vertex sets");
      hit[v] = true;
    }
  }
  if (src.clique_k() != dst.clique_k()) throw std::invalid_argument("clique sizes differ");

  IsomorphismResult<K> res;
  int dim = src.dim();
  if (dim != dst.dim()) {
    res.witness = "dimension mismatch";
    return res;
  }
  // Per-basis images: phi(b) = sign * dst basis element.
  std::vector<int> image(dim, -1);
  std::vector<K> sign(dim, K(1));
  for (int v = 1; v <= gs.n; ++v) image[src.vertex_index(v)] = dst.vertex_index(sigma[v - 1]);
  for (const auto& e : gs.edges) {
    int a = sigma[e.first - 1], b = sigma[e.second - 1];
    Edge im{std::min(a, b), std::max(a, b)};
    if (!gd.adjacent(im.first, im.second)) {
      res.witness = "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                    ") maps to non-edge (" + std::to_string(im.first) + "," + std::to_string(im.second) + ")";
      return res;
    }
    int si = src.edge_index(e);
    image[si] = dst.edge_index(im);
    sign[si] = a < b ? K(1) : K(0) - K(1);
  }
  for (const auto& t : src.cliques().cliques) {
    std::vector<int> im;
    for (int v : t) im.push_back(sigma[v - 1]);
    std::sort(im.begin(), im.end());
    bool found = true;
    try {
      int di = dst.clique_index(im);
      image[src.clique_index(t)] = di;
    } catch (const std::out_of_range&) {
      found = false;
    }
    if (!found) {
      std::string lbl;
      for (int v : t) lbl += (lbl.empty() ? "" : ",") + std::to_string(v);
      res.witness = "clique (" + lbl + ") maps to a non-clique";
      return res;
    }
  }

  // Verify phi[x,y] = [phi x, phi y] on all basis pairs.
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      auto [t, c] = src.bracket_basis(a, b);
      auto [t2, c2] = dst.bracket_basis(image[a], image[b]);
      // lhs: phi([a,b]) = c * sign[t] * dst_t ; rhs: sign[a] sign[b] c2 * dst_t2
      K lhs_coeff = t >= 0 ? c * sign[t] : K(0);
      K rhs_coeff = t2 >= 0 ? sign[a] * sign[b] * c2 : K(0);
      int lhs_target = t >= 0 ? image[t] : -1;
      bool lhs_zero = t < 0 || is_zero(lhs_coeff);
      bool rhs_zero = t2 < 0 || is_zero(rhs_coeff);
      if (lhs_zero != rhs_zero || (!lhs_zero && (lhs_target != t2 || !(lhs_coeff == rhs_coeff)))) {
        res.witness = "bracket mismatch at pair (" + src.basis(a).label() + ", " + src.basis(b).label() + ")";
        return res;
      }
    }

  res.ok = true;
  res.map = Matrix<K>(dim, dim);
  for (int i = 0; i < dim; ++i) res.map.at(image[i], i) = sign[i];
  return res;
}

}  // namespace liegraph
