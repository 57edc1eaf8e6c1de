#pragma once

#include <stdexcept>
#include <vector>

#include "liegraph/linalg.hpp"

namespace liegraph {

// Linear subspace of K^ambient, stored as an RREF basis (one row per
// dimension). Two subspaces are equal iff their RREF bases are identical.
template <class K>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace from_rows(const Matrix<K>& rows) {
    Subspace s(rows.cols());
    Matrix<K> r = rows;
    RrefResult info = rref_in_place(r);
    s.basis_ = Matrix<K>(info.rank, rows.cols());
    for (int i = 0; i < info.rank; ++i) s.basis_.set_row(i, r.row(i));
    return s;
  }

  static Subspace from_vectors(const std::vector<std::vector<K>>& vecs, int ambient) {
    Matrix<K> m(static_cast<int>(vecs.size()), ambient);
    for (int i = 0; i < static_cast<int>(vecs.size()); ++i) m.set_row(i, vecs[i]);
    return from_rows(m);
  }

  static Subspace full(int ambient) { return from_rows(Matrix<K>::identity(ambient)); }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix<K>& basis() const { return basis_; }
  std::vector<K> basis_vector(int i) const { return basis_.row(i); }

  bool contains(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("ambient mismatch");
    std::vector<K> w = v;
    for (int r = 0; r < basis_.rows(); ++r) {
      int pc = pivot_col(r);
      if (!is_zero(w[pc])) add_scaled(w, basis_.row(r), K(K(0) - w[pc]));
    }
    return is_zero_vec(w);
  }

  bool contains(const Subspace& other) const {
    for (int r = 0; r < other.basis_.rows(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }

  // Coordinates of v in this basis; throws when v is outside the subspace.
  std::vector<K> coordinates(const std::vector<K>& v) const {
    std::vector<K> w = v;
    std::vector<K> coef(dim(), K(0));
    for (int r = 0; r < basis_.rows(); ++r) {
      int pc = pivot_col(r);
      coef[r] = w[pc];
      if (!is_zero(w[pc])) add_scaled(w, basis_.row(r), K(K(0) - w[pc]));
    }
    if (!is_zero_vec(w)) throw std::invalid_argument("vector not in subspace");
    return coef;
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    check_ambient(a, b);
    Matrix<K> stacked(a.dim() + b.dim(), a.ambient_);
    for (int i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis_.row(i));
    for (int i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis_.row(i));
    return from_rows(stacked);
  }

  // Zassenhaus: RREF of [[A A],[B 0]]; rows with zero left half carry the
  // intersection in the right half.
  friend Subspace intersection(const Subspace& a, const Subspace& b) {
    check_ambient(a, b);
    int n = a.ambient_;
    Matrix<K> z(a.dim() + b.dim(), 2 * n);
    for (int i = 0; i < a.dim(); ++i)
      for (int c = 0; c < n; ++c) {
        z.at(i, c) = a.basis_.at(i, c);
        z.at(i, n + c) = a.basis_.at(i, c);
      }
    for (int i = 0; i < b.dim(); ++i)
      for (int c = 0; c < n; ++c) z.at(a.dim() + i, c) = b.basis_.at(i, c);
    RrefResult info = rref_in_place(z);
    std::vector<std::vector<K>> inter;
    for (int r = 0; r < info.rank; ++r) {
      bool left_zero = true;
      for (int c = 0; c < n && left_zero; ++c)
        if (!is_zero(z.at(r, c))) left_zero = false;
      if (!left_zero) continue;
      std::vector<K> v(n);
      for (int c = 0; c < n; ++c) v[c] = z.at(r, n + c);
      inter.push_back(std::move(v));
    }
    return from_vectors(inter, n);
  }

  // Null space of the basis matrix, i.e. the complement with respect to the
  // standard dot product.
  friend Subspace orthogonal_complement(const Subspace& a) {
    if (a.dim() == 0) return full(a.ambient_);
    Subspace s(a.ambient_);
    s.basis_ = kernel(a.basis_);
    return s;
  }

 private:
  static void check_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw std::invalid_argument("subspace ambient mismatch");
  }

  int pivot_col(int r) const {
    for (int c = 0; c < ambient_; ++c)
      if (!is_zero(basis_.at(r, c))) return c;
    throw std::logic_error("zero row in subspace basis");
  }

  int ambient_ = 0;
  Matrix<K> basis_;
};

}  // namespace liegraph
