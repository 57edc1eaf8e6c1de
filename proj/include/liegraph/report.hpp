#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "liegraph/algebra.hpp"
#include "liegraph/graph.hpp"
#include "liegraph/metric.hpp"
#include "liegraph/soliton.hpp"

namespace liegraph {

using json = nlohmann::json;

// Invariant violation inside the tool itself (exit code 3), as opposed to
// bad input (exit code 2).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Floats are serialized as strings with 17 significant digits so reports are
// byte-identical across runs; exact scalars are serialized as "p/q" strings.
std::string fmt17(double x);

std::string input_digest(const Graph& g);

struct FieldSpec {
  std::string tag = "q";      // "q" | "f2" | "fp:P"
  std::uint64_t modulus = 0;  // 0 for the rationals
};
FieldSpec parse_field(const std::string& tag);

json graph_section(const Graph& g, int k);

// Field-dispatching algebra section ("q", "f2", "fp:P"); char-2 formula
// refusals surface as warnings, with the oracle supplying the dimensions.
json algebra_section(const Graph& g, int k, const FieldSpec& field);

json fingerprint_json(const Fingerprint& f);

json metric_section(const GraphLieAlgebra<Rational>& alg, const MetricTensor& metric,
                    int trials, std::uint64_t seed);

json soliton_section(const GraphLieAlgebra<Rational>& alg, int iters, double tol,
                     std::uint64_t seed);

json comparison_section(const Graph& a, const Graph& b, int max_n);

json report_shell(const std::string& command, const std::string& digest);

// Parse a metric file: {"diag":[...]} or {"matrix":[[...]]}, entries rational
// strings or numbers (decimal literals convert exactly).
MetricTensor parse_metric_json(const json& j, int dim);
MetricTensor parse_metric_file(const std::string& path, int dim);
MetricTensor parse_diag_spec(const std::string& comma_list, int dim);

json matrix_json(const Matrix<Rational>& m, const std::string& field_tag);

void write_atomic(const std::string& path, const std::string& content);

std::string pretty_summary(const json& report);

// 64-bit Miller-Rabin primality (deterministic base set).
bool is_prime_u64(std::uint64_t n);

}  // namespace liegraph
