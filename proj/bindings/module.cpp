#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liegraph/report.hpp"
#include "liegraph/soliton.hpp"

namespace py = pybind11;
using namespace liegraph;

namespace {

Graph graph_from_text(const std::string& text) { return parse_edge_list(text); }

std::string analyze_json(const std::string& text, int k, const std::string& field_tag) {
  Graph g = graph_from_text(text);
  FieldSpec field = parse_field(field_tag);
  json rep = report_shell("analyze", input_digest(g));
  rep["graph"] = graph_section(g, k);
  rep["algebra"] = algebra_section(g, k, field);
  return rep.dump(2);
}

std::string metric_json(const std::string& text, const std::string& diag_spec, int trials,
                        std::uint64_t seed) {
  Graph g = graph_from_text(text);
  GraphLieAlgebra<Rational> alg = GraphLieAlgebra<Rational>::build(g, 3);
  MetricTensor m = diag_spec.empty() ? MetricTensor::identity(alg.dim())
                                     : parse_diag_spec(diag_spec, alg.dim());
  json rep = report_shell("metric", input_digest(g));
  rep["graph"] = graph_section(g, 3);
  rep["metric"] = metric_section(alg, m, trials, seed);
  return rep.dump(2);
}

std::string soliton_json(const std::string& text, int iters, double tol, std::uint64_t seed) {
  Graph g = graph_from_text(text);
  GraphLieAlgebra<Rational> alg = GraphLieAlgebra<Rational>::build(g, 3);
  json rep = report_shell("soliton", input_digest(g));
  rep["graph"] = graph_section(g, 3);
  rep["soliton"] = soliton_section(alg, iters, tol, seed);
  return rep.dump(2);
}

std::string compare_json(const std::string& text_a, const std::string& text_b, int max_n) {
  Graph a = graph_from_text(text_a);
  Graph b = graph_from_text(text_b);
  json rep = report_shell("compare", input_digest(a));
  rep["input_digest_b"] = input_digest(b);
  rep["comparison"] = comparison_section(a, b, max_n);
  return rep.dump(2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solvable Lie algebras from graph cliques: exact invariants and "
            "left-invariant metric geometry.";

  m.def("generate", [](const std::string& family, std::uint64_t seed) {
          return to_edge_list_text(generate(family, seed));
        },
        py::arg("family"), py::arg("seed") = 0,
        "Generate an edge-list text for kn:N, path:N, cycle:N or gnp:N:P.");

  m.def("canonical_edge_list", [](const std::string& text) {
          Graph g = graph_from_text(text);
          return to_edge_list_text(g);
        },
        py::arg("text"), "Parse and re-serialize an edge list in canonical form.");

  m.def("input_digest", [](const std::string& text) { return input_digest(graph_from_text(text)); },
        py::arg("text"));

  m.def("clique_count", [](const std::string& text, int k) {
          Graph g = graph_from_text(text);
          return enumerate_k_cliques(g, k).size();
        },
        py::arg("text"), py::arg("k") = 3);

  m.def("algebra_dims", [](const std::string& text, int k) {
          GraphLieAlgebra<Rational> alg = GraphLieAlgebra<Rational>::build(graph_from_text(text), k);
          return py::make_tuple(alg.dim_v(), alg.dim_w(), alg.dim_u());
        },
        py::arg("text"), py::arg("k") = 3, "Dimensions (V, W, U) of the algebra.");

  m.def("center_dim", [](const std::string& text, int k) {
          return GraphLieAlgebra<Rational>::build(graph_from_text(text), k).center_oracle().dim();
        },
        py::arg("text"), py::arg("k") = 3);

  m.def("nilradical_dim", [](const std::string& text, int k) {
          return GraphLieAlgebra<Rational>::build(graph_from_text(text), k).nilradical().dim();
        },
        py::arg("text"), py::arg("k") = 3);

  m.def("jacobi_ok", [](const std::string& text, int k) {
          return GraphLieAlgebra<Rational>::build(graph_from_text(text), k).verify_jacobi().ok;
        },
        py::arg("text"), py::arg("k") = 3);

  m.def("canonical_labeling", [](const std::string& text) {
          CanonicalForm cf = canonical_form(graph_from_text(text));
          return py::make_tuple(cf.labeling, cf.edges);
        },
        py::arg("text"));

  m.def("analyze", &analyze_json, py::arg("text"), py::arg("k") = 3, py::arg("field") = "q",
        "Full analysis report as a JSON string.");
  m.def("metric_report", &metric_json, py::arg("text"), py::arg("diag") = "",
        py::arg("trials") = 0, py::arg("seed") = 0,
        "Metric-geometry report as a JSON string (identity metric by default).");
  m.def("soliton_search", &soliton_json, py::arg("text"), py::arg("iters") = 500,
        py::arg("tol") = 1e-8, py::arg("seed") = 0,
        "Diagonal soliton search report as a JSON string.");
  m.def("compare", &compare_json, py::arg("text_a"), py::arg("text_b"), py::arg("max_n") = 10,
        "Graph-isomorphism and fingerprint comparison as a JSON string.");

  m.attr("__version__") = LIEGRAPH_VERSION;
}
