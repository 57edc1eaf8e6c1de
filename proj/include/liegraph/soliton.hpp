#pragma once

#include <optional>
#include <vector>

#include "liegraph/metric.hpp"

namespace liegraph {

struct SolitonCertificate {
  bool found = false;
  Rational c = Rational(0);
  Matrix<Rational> derivation;  // D with Ric_op = c Id + D, when found
  double residual = 0.0;        // Frobenius norm of the unrepresentable part
  bool is_derivation = false;   // D re-verified against the Leibniz rule
  MetricTensor metric;          // the metric the certificate refers to
};

// Exact test of Ric_op = c Id + D with D a derivation, for an exact metric.
// On failure the certificate carries the least-squares residual and best c.
SolitonCertificate soliton_check(const LieAlgebraValue& alg, const MetricTensor& metric);

// Exact solver for diagonal soliton metrics on hypothesis-satisfying graph
// algebras with unit weights. The diagonal Ricci entries are linear in the
// variables x_T = 1/g_T and y_e = g_e/(g_a g_b), so the soliton conditions
// on the diagonal become an exact linear system; any positive solution is
// reconstructed as a metric and re-verified by soliton_check before being
// returned.
std::optional<MetricTensor> exact_diagonal_soliton(const GraphLieAlgebra<Rational>& alg,
                                                   const std::vector<double>* hint_diag = nullptr);

struct SolitonSearchResult {
  std::vector<double> best_diag;  // metric diagonal per basis element
  double residual = 1e300;        // relative residual at best_diag
  std::vector<double> history;    // residual after each sweep
  int iterations = 0;
  bool reached_tol = false;
  std::optional<SolitonCertificate> certificate;   // exact recheck of the
  std::optional<MetricTensor> certified_metric;    // rationalized optimum
};

// Derivative-free coordinate descent over log-parametrized diagonal metrics,
// reduced by the graph's vertex/edge/clique orbits; minimizes the relative
// Frobenius residual of the Ricci operator against span{Id} + Der(g).
SolitonSearchResult soliton_search_diagonal(const GraphLieAlgebra<Rational>& alg, int iters,
                                            double tol, std::uint64_t seed);

// Numeric Ricci operator (original basis) for a diagonal metric on a graph
// algebra; used by the search loop and cross-validated against the exact
// path in tests.
std::vector<double> numeric_ricci_operator_diag(const GraphLieAlgebra<Rational>& alg,
                                                const std::vector<double>& diag);

// Continued-fraction rational approximation with bounded denominator.
Rational rational_approx(double x, long max_den);

}  // namespace liegraph
