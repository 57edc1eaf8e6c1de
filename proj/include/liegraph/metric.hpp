#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liegraph/algebra.hpp"
#include "liegraph/linalg.hpp"
#include "liegraph/subspace.hpp"

namespace liegraph {

using SparseVec = std::vector<std::pair<int, Rational>>;

// A rational Lie algebra given by an explicit bracket table. Produced from a
// graph algebra or by restriction to a bracket-closed subspace; this is what
// the metric machinery operates on so that g, g' and g1 share one code path.
class LieAlgebraValue {
 public:
  static LieAlgebraValue from_graph_algebra(const GraphLieAlgebra<Rational>& alg);
  // Restriction to a subalgebra; throws when the subspace is not closed.
  static LieAlgebraValue restrict(const LieAlgebraValue& parent, const Subspace<Rational>& sub);

  int dim() const { return dim_; }
  // sparse coefficients of [E_a, E_b]; antisymmetric image synthesized
  SparseVec bracket_basis(int a, int b) const;
  std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  Matrix<Rational> adjoint(const std::vector<Rational>& x) const;
  Matrix<Rational> adjoint_basis(int a) const;
  Rational ad_trace(int a) const;
  std::vector<Rational> basis_vector(int i) const;
  Subspace<Rational> derivation_space() const;
  bool is_derivation(const Matrix<Rational>& d) const;

 private:
  int dim_ = 0;
  std::vector<SparseVec> table_;  // for a < b at a*dim + b
};

// Symmetric positive-definite inner product on the algebra basis. Exact;
// positive definiteness is certified by an LDL^T factorization.
class MetricTensor {
 public:
  static MetricTensor identity(int dim);
  static MetricTensor diagonal(const std::vector<Rational>& d);
  static MetricTensor dense(const Matrix<Rational>& g);

  int dim() const { return g_.rows(); }
  bool is_diagonal() const { return diagonal_; }
  const Matrix<Rational>& g() const { return g_; }
  const Matrix<Rational>& ginv() const { return ginv_; }
  Rational inner(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  std::vector<double> diag_double() const;

 private:
  Matrix<Rational> g_, ginv_;
  bool diagonal_ = false;
};

// Left-invariant Levi-Civita connection via the Koszul identity
// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
struct Connection {
  int dim = 0;
  std::vector<SparseVec> gamma;  // nabla_{E_a} E_b at a*dim + b

  const SparseVec& at(int a, int b) const { return gamma[static_cast<std::size_t>(a) * dim + b]; }
  std::vector<Rational> nabla(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
};

Connection levi_civita(const LieAlgebraValue& alg, const MetricTensor& metric);

// Full curvature package: components R(a,b,c,d) = g(R(E_a,E_b)E_c, E_d),
// the Lambda^2 operator Gram matrix, Ricci, and the mean curvature vector.
struct CurvatureData {
  int dim = 0;
  Connection conn;
  std::vector<Rational> components;   // ((a*dim+b)*dim+c)*dim+d
  Matrix<Rational> op_gram;           // S_{(ab),(cd)} = R(a,b,c,d), pairs lex
  Matrix<Rational> lambda2_gram;      // g(E_a^E_b, E_c^E_d)
  Matrix<Rational> ricci;             // bilinear form
  Matrix<Rational> ricci_op;          // G^{-1} Ricci
  std::vector<Rational> mean_curvature;
  std::vector<Edge> pair_order;       // 0-based index pairs (a,b), a<b

  const Rational& R(int a, int b, int c, int d) const {
    return components[((static_cast<std::size_t>(a) * dim + b) * dim + c) * dim + d];
  }
};

CurvatureData curvature(const LieAlgebraValue& alg, const MetricTensor& metric);

// R(x,y)z for explicit vectors, without building the dim^4 table.
std::vector<Rational> curvature_apply(const LieAlgebraValue& alg, const Connection& conn,
                                      const std::vector<Rational>& x, const std::vector<Rational>& y,
                                      const std::vector<Rational>& z);

// Exact Ricci bilinear form (no dim^4 table).
Matrix<Rational> ricci_exact(const LieAlgebraValue& alg, const MetricTensor& metric);
Matrix<Rational> ricci_operator(const LieAlgebraValue& alg, const MetricTensor& metric);

// The five-term sectional numerator g(R(X,Y)Y,X).
Rational sectional_formula(const LieAlgebraValue& alg, const MetricTensor& metric,
                           const std::vector<Rational>& x, const std::vector<Rational>& y);

// H_g with g(H_g, Y) = tr(ad_Y).
std::vector<Rational> mean_curvature(const LieAlgebraValue& alg, const MetricTensor& metric);

// Scalar Ricci form for diagonal metrics, evaluated termwise:
// -1/2 tr(ad_X^2) - 1/2 tr(ad_X ad_X^t) + 1/2 sum_{i<j} g([Ei,Ej],X)^2 / (gi gj)
//   - g(ad_H X, X),
// with the bracket-square sum over ordered pairs folded into the 1/2.
Rational ricci_scalar_form(const LieAlgebraValue& alg, const MetricTensor& metric,
                           const std::vector<Rational>& x);

struct IwasawaReport {
  bool a = false;  // abelian complement orthogonal to g'
  bool b = false;  // ad_B symmetric for B in the complement, injectively
  bool c = false;  // ad_{B0}|g' positive definite for the explicit candidate
  bool b0_in_complement = false;
  std::vector<Rational> b0;             // candidate in algebra coordinates
  std::vector<Rational> b0_eigenvalues;  // diagonal of ad_{B0}|g' when diagonal
};

IwasawaReport iwasawa_check(const LieAlgebraValue& alg, const MetricTensor& metric,
                            const std::vector<Rational>& b0_candidate);

struct SplitG1G2 {
  Subspace<Rational> g1, g2;  // g' + abar and ker A
  LieAlgebraValue g1_algebra;
  MetricTensor g1_metric;     // induced by the ambient metric
};

// g = g1 + g2 with g2 = ker A = Z(g), abar = (ker A)^perp inside U w.r.t.
// the standard dot product. Requires every vertex in a clique.
SplitG1G2 split_g1_g2(const GraphLieAlgebra<Rational>& alg,
                      const MetricTensor& metric);

// g' + abar as a restricted algebra, without the hypothesis guard (g' is
// then V_Delta + W and the split is not a center decomposition).
std::pair<LieAlgebraValue, Subspace<Rational>> g1_subalgebra(const GraphLieAlgebra<Rational>& alg,
                                                             const MetricTensor& metric);

// The explicit Iwasawa candidate B0 = -sum of clique basis vectors.
std::vector<Rational> b0_candidate(const GraphLieAlgebra<Rational>& alg);

struct RicciBlocksResult {
  Subspace<Rational> g1_space;     // ordered basis: g' rows first, abar rows after
  LieAlgebraValue g1;
  MetricTensor g1_metric;
  Matrix<Rational> ricci;          // bilinear form in the g1 basis
  int dim_gprime = 0;
};

// Block assembly Ric(B,C) = -tr(ad_B ad_C), Ric(B,X) = 0,
// Ric(X,Y) = Ric_{g'}(X,Y) - g([H,X],Y); requires the clique hypothesis and
// Iwasawa (a), (b) for the supplied metric.
RicciBlocksResult ricci_blocks(const GraphLieAlgebra<Rational>& alg, const MetricTensor& metric);

struct StablyRicciDiagonalReport {
  bool all_diagonal = true;
  double max_offdiag = 0.0;
  std::string max_offdiag_exact = "0";
  int trials = 0;
};

StablyRicciDiagonalReport stably_ricci_diagonal_test(const GraphLieAlgebra<Rational>& alg,
                                                     int trials, std::uint64_t seed);

struct OperatorSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double max_eigenvalue = 0.0;
  bool nonpositive = false;  // max <= +1e-9
  bool boundary = false;     // max within (-1e-9, 1e-9)
};

OperatorSpectrum curvature_operator_spectrum(const CurvatureData& cd);

// Curvature identity checks (exact): antisymmetries, pair symmetry, first
// Bianchi; returns false on the first violation.
bool verify_curvature_identities(const CurvatureData& cd);

}  // namespace liegraph
