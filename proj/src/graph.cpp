#include "liegraph/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace liegraph {

Graph::Graph(int n_, std::vector<Edge> edges_, std::optional<std::vector<Rational>> weights_)
    : n(n_), edges(std::move(edges_)), weights(std::move(weights_)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::sort(edges.begin(), edges.end());
  for (const auto& [i, j] : edges) {
    if (i >= j) throw std::invalid_argument("edge endpoints must satisfy i < j");
    if (i < 1 || j > n) throw std::invalid_argument("edge endpoint out of range");
  }
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  if (weights && static_cast<int>(weights->size()) != n)
    throw std::invalid_argument("weight vector length must equal vertex count");
}

bool Graph::adjacent(int i, int j) const {
  if (i == j) return false;
  Edge e = i < j ? Edge{i, j} : Edge{j, i};
  return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> nb;
  for (const auto& [a, b] : edges) {
    if (a == i) nb.push_back(b);
    if (b == i) nb.push_back(a);
  }
  std::sort(nb.begin(), nb.end());
  return nb;
}

int Graph::degree(int i) const { return static_cast<int>(neighbors(i).size()); }

namespace {

int parse_int(const std::string& tok, int line, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + ": '" + tok + "'");
  }
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool saw_count = false, saw_edge = false;
  int declared_n = -1;
  int max_endpoint = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::map<int, Rational> weight_map;
  int weight_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream ls(stripped);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;

    if (toks[0] == "w") {
      if (toks.size() != 3) throw ParseError(lineno, "weight line must be 'w i value'");
      int v = parse_int(toks[1], lineno, "weight vertex");
      try {
        weight_map[v] = rat_from_string(toks[2]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
      if (weight_line == 0) weight_line = lineno;
      continue;
    }
    if (toks.size() == 1) {
      if (saw_count || saw_edge) throw ParseError(lineno, "unexpected single token");
      declared_n = parse_int(toks[0], lineno, "vertex count");
      if (declared_n < 0) throw ParseError(lineno, "negative vertex count");
      saw_count = true;
      continue;
    }
    if (toks.size() != 2) throw ParseError(lineno, "malformed line (expected 'i j')");
    int i = parse_int(toks[0], lineno, "endpoint");
    int j = parse_int(toks[1], lineno, "endpoint");
    if (i == j) throw ParseError(lineno, "self-loop at vertex " + std::to_string(i));
    if (i < 1 || j < 1) throw ParseError(lineno, "endpoint out of range");
    if (declared_n >= 0 && (i > declared_n || j > declared_n))
      throw ParseError(lineno, "endpoint out of range (n = " + std::to_string(declared_n) + ")");
    Edge e = i < j ? Edge{i, j} : Edge{j, i};
    if (!seen.insert(e).second)
      throw ParseError(lineno, "duplicate edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    edges.push_back(e);
    max_endpoint = std::max(max_endpoint, e.second);
    saw_edge = true;
  }

  int n = declared_n >= 0 ? declared_n : max_endpoint;
  std::optional<std::vector<Rational>> weights;
  if (!weight_map.empty()) {
    weights.emplace(n, Rational(1));
    for (const auto& [v, w] : weight_map) {
      if (v < 1 || v > n) throw ParseError(weight_line, "weight vertex out of range");
      (*weights)[v - 1] = w;
    }
  }
  return Graph(n, std::move(edges), std::move(weights));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return parse_edge_list(in);
}

std::string to_edge_list_text(const Graph& g) {
  std::ostringstream out;
  out << g.n << "\n";
  for (const auto& [i, j] : g.edges) out << i << " " << j << "\n";
  if (g.weights)
    for (int v = 1; v <= g.n; ++v) out << "w " << v << " " << scalar_str((*g.weights)[v - 1]) << "\n";
  return out.str();
}

std::uint64_t XorShift64Star::next() {
  s_ ^= s_ >> 12;
  s_ ^= s_ << 25;
  s_ ^= s_ >> 27;
  return s_ * 0x2545f4914f6cdd1dULL;
}

double XorShift64Star::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t XorShift64Star::next_below(std::uint64_t bound) { return next() % bound; }

namespace {

std::vector<std::string> split_spec(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Graph generate(const std::string& family_spec, std::uint64_t seed) {
  std::vector<std::string> p = split_spec(family_spec);
  const std::string& fam = p[0];
  auto want = [&](std::size_t k) {
    if (p.size() != k + 1)
      throw std::invalid_argument("family '" + fam + "' expects " + std::to_string(k) + " parameter(s)");
  };
  auto param_int = [&](std::size_t i) {
    try {
      return std::stoi(p.at(i));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad parameter '" + p.at(i) + "' in '" + family_spec + "'");
    }
  };

  if (fam == "kn") {
    want(1);
    int n = param_int(1);
    if (n < 1) throw std::invalid_argument("kn requires n >= 1");
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
    return Graph(n, std::move(e));
  }
  if (fam == "path") {
    want(1);
    int n = param_int(1);
    if (n < 1) throw std::invalid_argument("path requires n >= 1");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    return Graph(n, std::move(e));
  }
  if (fam == "cycle") {
    want(1);
    int n = param_int(1);
    if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
    e.push_back({1, n});
    return Graph(n, std::move(e));
  }
  if (fam == "gnp") {
    want(2);
    int n = param_int(1);
    if (n < 1) throw std::invalid_argument("gnp requires n >= 1");
    double prob;
    try {
      prob = std::stod(p[2]);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad probability '" + p[2] + "'");
    }
    if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("gnp probability must be in [0,1]");
    XorShift64Star rng(seed * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (rng.next_unit() < prob) e.push_back({i, j});
    return Graph(n, std::move(e));
  }
  throw std::invalid_argument("unknown graph family '" + fam + "'");
}

namespace {

void extend_clique(const Graph& g, std::vector<int>& cur, const std::vector<int>& cands, int k,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t idx = 0; idx < cands.size(); ++idx) {
    int v = cands[idx];
    if (static_cast<int>(cur.size()) + (static_cast<int>(cands.size()) - static_cast<int>(idx)) < k) break;
    std::vector<int> next;
    for (std::size_t t = idx + 1; t < cands.size(); ++t)
      if (g.adjacent(v, cands[t])) next.push_back(cands[t]);
    cur.push_back(v);
    extend_clique(g, cur, next, k, out);
    cur.pop_back();
  }
}

}  // namespace

CliqueSet enumerate_k_cliques(const Graph& g, int k) {
  if (k < 3) throw std::invalid_argument("clique size must be >= 3");
  CliqueSet cs;
  cs.k = k;
  for (int v = 1; v <= g.n; ++v) {
    std::vector<int> cands;
    for (int u : g.neighbors(v))
      if (u > v) cands.push_back(u);
    std::vector<int> cur{v};
    extend_clique(g, cur, cands, k, cs.cliques);
  }
  std::sort(cs.cliques.begin(), cs.cliques.end());
  return cs;
}

GraphDecomposition decompose(const Graph& g, const CliqueSet& cliques) {
  std::vector<bool> in_delta(g.n + 1, false);
  for (const auto& c : cliques.cliques)
    for (int v : c) in_delta[v] = true;
  GraphDecomposition d;
  for (int v = 1; v <= g.n; ++v) (in_delta[v] ? d.v_delta : d.v_gamma).push_back(v);
  for (const auto& e : g.edges) {
    bool a = in_delta[e.first], b = in_delta[e.second];
    if (a && b)
      d.e_delta.push_back(e);
    else if (!a && !b)
      d.e_gamma.push_back(e);
    else
      d.e_delta_gamma.push_back(e);
  }
  return d;
}

bool every_vertex_in_clique(const Graph& g, const CliqueSet& cliques) {
  return decompose(g, cliques).v_gamma.empty();
}

bool CoherenceGraph::all_components_complete() const {
  return std::all_of(comp_complete.begin(), comp_complete.end(), [](bool b) { return b; });
}

CoherenceGraph coherence_graph(const Graph& g, SimilarityRule rule) {
  std::vector<std::vector<int>> key(g.n + 1);
  for (int v = 1; v <= g.n; ++v) {
    key[v] = g.neighbors(v);
    if (rule == SimilarityRule::Closed) {
      key[v].push_back(v);
      std::sort(key[v].begin(), key[v].end());
    }
  }
  CoherenceGraph cg;
  cg.rule = rule;
  std::map<std::vector<int>, int> class_of_key;
  std::vector<int> cls(g.n + 1, -1);
  for (int v = 1; v <= g.n; ++v) {
    auto [it, inserted] = class_of_key.try_emplace(key[v], static_cast<int>(cg.components.size()));
    if (inserted) cg.components.emplace_back();
    cls[v] = it->second;
    cg.components[it->second].push_back(v);
  }
  std::set<std::pair<int, int>> comp_edges;
  for (const auto& [i, j] : g.edges) {
    int a = cls[i], b = cls[j];
    if (a != b) comp_edges.insert({std::min(a, b), std::max(a, b)});
  }
  cg.comp_edges.assign(comp_edges.begin(), comp_edges.end());
  for (const auto& comp : cg.components) {
    bool complete = true;
    for (std::size_t x = 0; x < comp.size() && complete; ++x)
      for (std::size_t y = x + 1; y < comp.size() && complete; ++y)
        if (!g.adjacent(comp[x], comp[y])) complete = false;
    cg.comp_complete.push_back(complete);
  }
  return cg;
}

int max_canonical_n() {
  if (const char* env = std::getenv("LIEGRAPH_MAX_N")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 10;
}

namespace {

// The canonical key is the adjacency bit-string read column-major:
// (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),... Placing one more vertex appends a
// contiguous block of bits, so prefix comparison against the current best is
// a valid branch-and-bound prune.
void canon_search(const Graph& g, std::vector<int>& order, std::vector<bool>& used,
                  std::vector<bool>& prefix, std::vector<bool>& best,
                  std::vector<int>& best_order) {
  int pos = static_cast<int>(order.size());
  if (pos == g.n) {
    if (best.empty() || prefix < best) {
      best = prefix;
      best_order = order;
    }
    return;
  }
  for (int v = 1; v <= g.n; ++v) {
    if (used[v]) continue;
    std::size_t mark = prefix.size();
    for (int i = 0; i < pos; ++i) prefix.push_back(g.adjacent(order[i], v));
    bool prune = false;
    if (!best.empty()) {
      for (std::size_t t = 0; t < prefix.size(); ++t) {
        if (prefix[t] != best[t]) {
          prune = prefix[t] > best[t];
          break;
        }
      }
    }
    if (!prune) {
      order.push_back(v);
      used[v] = true;
      canon_search(g, order, used, prefix, best, best_order);
      used[v] = false;
      order.pop_back();
    }
    prefix.resize(mark);
  }
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) { return canonical_form(g, max_canonical_n()); }

CanonicalForm canonical_form(const Graph& g, int guard_n) {
  if (g.n > guard_n)
    throw std::invalid_argument("canonical_form: n = " + std::to_string(g.n) + " exceeds the exhaustive guard (" +
                                std::to_string(guard_n) + "); set LIEGRAPH_MAX_N to override");
  CanonicalForm cf;
  cf.labeling.assign(g.n, 0);
  if (g.n == 0) return cf;
  std::vector<int> order, best_order;
  std::vector<bool> used(g.n + 1, false), prefix, best;
  canon_search(g, order, used, prefix, best, best_order);
  for (int pos = 0; pos < g.n; ++pos) cf.labeling[best_order[pos] - 1] = pos + 1;
  for (const auto& [i, j] : g.edges) {
    int a = cf.labeling[i - 1], b = cf.labeling[j - 1];
    cf.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(cf.edges.begin(), cf.edges.end());
  return cf;
}

Graph permute_graph(const Graph& g, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != g.n) throw std::invalid_argument("permutation length mismatch");
  std::vector<bool> hit(g.n + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > g.n || hit[v]) throw std::invalid_argument("not a permutation of 1..n");
    hit[v] = true;
  }
  std::vector<Edge> e;
  for (const auto& [i, j] : g.edges) {
    int a = sigma[i - 1], b = sigma[j - 1];
    e.push_back({std::min(a, b), std::max(a, b)});
  }
  std::optional<std::vector<Rational>> w;
  if (g.weights) {
    w.emplace(g.n, Rational(1));
    for (int v = 1; v <= g.n; ++v) (*w)[sigma[v - 1] - 1] = (*g.weights)[v - 1];
  }
  return Graph(g.n, std::move(e), std::move(w));
}

namespace {

void auto_search(const Graph& g, std::vector<int>& img, std::vector<bool>& used,
                 std::vector<std::vector<int>>& out) {
  int v = static_cast<int>(img.size()) + 1;
  if (v > g.n) {
    out.push_back(img);
    return;
  }
  for (int w = 1; w <= g.n; ++w) {
    if (used[w] || g.degree(v) != g.degree(w)) continue;
    bool ok = true;
    for (int u = 1; u < v && ok; ++u)
      if (g.adjacent(u, v) != g.adjacent(img[u - 1], w)) ok = false;
    if (!ok) continue;
    img.push_back(w);
    used[w] = true;
    auto_search(g, img, used, out);
    used[w] = false;
    img.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> automorphisms(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> img;
  std::vector<bool> used(g.n + 1, false);
  auto_search(g, img, used, out);
  return out;
}

SymmetryOrbits symmetry_orbits(const Graph& g, const CliqueSet& cliques) {
  std::vector<std::vector<int>> autos = automorphisms(g);
  SymmetryOrbits so;
  so.vertex_orbit.assign(g.n, -1);
  so.edge_orbit.assign(g.edges.size(), -1);
  so.clique_orbit.assign(cliques.cliques.size(), -1);

  std::map<Edge, int> edge_index;
  for (std::size_t i = 0; i < g.edges.size(); ++i) edge_index[g.edges[i]] = static_cast<int>(i);
  std::map<std::vector<int>, int> clique_index;
  for (std::size_t i = 0; i < cliques.cliques.size(); ++i)
    clique_index[cliques.cliques[i]] = static_cast<int>(i);

  for (int v = 1; v <= g.n; ++v) {
    if (so.vertex_orbit[v - 1] >= 0) continue;
    int id = so.n_vertex_orbits++;
    for (const auto& a : autos) so.vertex_orbit[a[v - 1] - 1] = id;
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (so.edge_orbit[e] >= 0) continue;
    int id = so.n_edge_orbits++;
    for (const auto& a : autos) {
      int x = a[g.edges[e].first - 1], y = a[g.edges[e].second - 1];
      so.edge_orbit[edge_index.at({std::min(x, y), std::max(x, y)})] = id;
    }
  }
  for (std::size_t c = 0; c < cliques.cliques.size(); ++c) {
    if (so.clique_orbit[c] >= 0) continue;
    int id = so.n_clique_orbits++;
    for (const auto& a : autos) {
      std::vector<int> img;
      for (int v : cliques.cliques[c]) img.push_back(a[v - 1]);
      std::sort(img.begin(), img.end());
      so.clique_orbit[clique_index.at(img)] = id;
    }
  }
  return so;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace liegraph
