#include <CLI11.hpp>
#include <iostream>

#include "liegraph/report.hpp"

using namespace liegraph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

void emit(const json& report, const std::string& out_path, bool pretty) {
  std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    write_atomic(out_path, text);
    if (pretty) std::cout << pretty_summary(report);
  } else {
    std::cout << text;
    if (pretty) std::cout << pretty_summary(report);
  }
}

json config_json(std::initializer_list<std::pair<std::string, json>> kv) {
  json j;
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph Lie algebras: exact invariants and left-invariant metric geometry"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand
  bool pretty = false;
  app.add_flag("--pretty", pretty, "print a human-readable summary table");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "build the algebra and report exact invariants");
  std::string an_input, an_field = "q", an_weights, an_out;
  int an_k = 3;
  analyze->add_option("input", an_input, "edge-list file")->required();
  analyze->add_option("--k", an_k, "clique size (default 3)");
  analyze->add_option("--field", an_field, "q | f2 | fp:P (default q)");
  analyze->add_option("--weights", an_weights, "weight file with 'w i value' lines");
  analyze->add_option("--out", an_out, "write the JSON report here");

  // metric
  auto* metric = app.add_subcommand("metric", "left-invariant metric analysis");
  std::string me_input, me_metric, me_diag, me_out;
  int me_trials = 0;
  std::uint64_t me_seed = 0;
  metric->add_option("input", me_input, "edge-list file")->required();
  metric->add_option("--metric", me_metric, "metric JSON file ({diag:[..]} or {matrix:[[..]]})");
  metric->add_option("--diag", me_diag, "comma-separated diagonal entries");
  metric->add_option("--trials", me_trials, "stably-Ricci-diagonal trials (default 0 = skip)");
  metric->add_option("--seed", me_seed, "seed for the trial metrics (default 0)");
  metric->add_option("--out", me_out, "write the JSON report here");

  // soliton
  auto* soliton = app.add_subcommand("soliton", "diagonal soliton search with exact recheck");
  std::string so_input, so_out;
  int so_iters = 500;
  double so_tol = 1e-8;
  std::uint64_t so_seed = 0;
  soliton->add_option("input", so_input, "edge-list file")->required();
  soliton->add_option("--iters", so_iters, "iteration cap (default 500)");
  soliton->add_option("--tol", so_tol, "target residual (default 1e-8)");
  soliton->add_option("--seed", so_seed, "search seed (default 0)");
  soliton->add_option("--out", so_out, "write the JSON report here");

  // compare
  auto* compare = app.add_subcommand("compare", "decide graph isomorphism and compare algebras");
  std::string cm_a, cm_b, cm_out;
  int cm_max_n = max_canonical_n();  // 10 unless LIEGRAPH_MAX_N overrides
  compare->add_option("inputA", cm_a, "first edge-list file")->required();
  compare->add_option("inputB", cm_b, "second edge-list file")->required();
  compare->add_option("--max-n", cm_max_n, "exhaustive-search guard (default 10)");
  compare->add_option("--out", cm_out, "write the JSON report here");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph family edge list");
  std::string ge_family, ge_out;
  std::uint64_t ge_seed = 0;
  gen->add_option("family", ge_family, "kn:N | path:N | cycle:N | gnp:N:P")->required();
  gen->add_option("--seed", ge_seed, "generator seed (default 0)");
  gen->add_option("--out", ge_out, "write the edge list here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      Graph g = parse_edge_list_file(an_input);
      if (!an_weights.empty()) {
        Graph wfile = parse_edge_list_file(an_weights);
        if (!wfile.weights) throw std::invalid_argument("weight file has no 'w i value' lines");
        if (wfile.n > g.n) throw std::invalid_argument("weight file addresses more vertices than the graph");
        std::vector<Rational> w(g.n, Rational(1));
        for (int v = 1; v <= wfile.n; ++v) w[v - 1] = (*wfile.weights)[v - 1];
        g.weights = std::move(w);
      }
      FieldSpec field = parse_field(an_field);
      json rep = report_shell("analyze", input_digest(g));
      rep["config"] = config_json({{"k", an_k}, {"field", an_field}, {"weights", !an_weights.empty()}});
      rep["graph"] = graph_section(g, an_k);
      rep["algebra"] = algebra_section(g, an_k, field);
      emit(rep, an_out, pretty);
      return kExitOk;
    }
    if (*metric) {
      Graph g = parse_edge_list_file(me_input);
      if (!me_metric.empty() && !me_diag.empty())
        throw std::invalid_argument("--metric and --diag are mutually exclusive");
      GraphLieAlgebra<Rational> alg = GraphLieAlgebra<Rational>::build(g, 3);
      MetricTensor m = !me_metric.empty() ? parse_metric_file(me_metric, alg.dim())
                       : !me_diag.empty() ? parse_diag_spec(me_diag, alg.dim())
                                          : MetricTensor::identity(alg.dim());
      json rep = report_shell("metric", input_digest(g));
      rep["config"] = config_json({{"trials", me_trials}, {"seed", std::to_string(me_seed)},
                                   {"metric", me_metric.empty() ? (me_diag.empty() ? "identity" : "diag") : "file"}});
      rep["graph"] = graph_section(g, 3);
      rep["metric"] = metric_section(alg, m, me_trials, me_seed);
      emit(rep, me_out, pretty);
      return kExitOk;
    }
    if (*soliton) {
      Graph g = parse_edge_list_file(so_input);
      GraphLieAlgebra<Rational> alg = GraphLieAlgebra<Rational>::build(g, 3);
      json rep = report_shell("soliton", input_digest(g));
      rep["config"] = config_json({{"iters", so_iters}, {"tol", fmt17(so_tol)}, {"seed", std::to_string(so_seed)}});
      rep["graph"] = graph_section(g, 3);
      rep["soliton"] = soliton_section(alg, so_iters, so_tol, so_seed);
      emit(rep, so_out, pretty);
      return kExitOk;
    }
    if (*compare) {
      Graph a = parse_edge_list_file(cm_a);
      Graph b = parse_edge_list_file(cm_b);
      json rep = report_shell("compare", input_digest(a));
      rep["input_digest_b"] = input_digest(b);
      rep["config"] = config_json({{"max_n", cm_max_n}});
      rep["comparison"] = comparison_section(a, b, cm_max_n);
      emit(rep, cm_out, pretty);
      return kExitOk;
    }
    if (*gen) {
      Graph g = generate(ge_family, ge_seed);
      std::string text = "# liegraph gen " + ge_family + " seed=" + std::to_string(ge_seed) + "\n" +
                         to_edge_list_text(g);
      if (!ge_out.empty())
        write_atomic(ge_out, text);
      else
        std::cout << text;
      return kExitOk;
    }
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
