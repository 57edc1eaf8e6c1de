#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liegraph/field.hpp"

namespace liegraph {

// Dense matrix over an exact field (Rational or Fp). Row-major.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, K(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const K& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<K> row(int r) const {
    return std::vector<K>(a_.begin() + static_cast<std::size_t>(r) * cols_,
                          a_.begin() + static_cast<std::size_t>(r + 1) * cols_);
  }

  void set_row(int r, const std::vector<K>& v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::size_t>(r) * cols_);
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const K& x = at(i, k);
        if (is_zero(x)) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (is_zero(o.at(k, j))) continue;
          r.at(i, j) += x * o.at(k, j);
        }
      }
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<K> r(rows_, K(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!is_zero(at(i, j)) && !is_zero(v[j])) r[i] += at(i, j) * v[j];
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Matrix scaled(const K& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<K> a_;
};

struct RrefResult {
  int rank = 0;
  std::vector<int> pivot_cols;
};

// In-place reduced row echelon form. Deterministic: the pivot is the first
// row with a nonzero entry in column order.
template <class K>
RrefResult rref_in_place(Matrix<K>& m) {
  RrefResult res;
  int lead = 0;
  for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
    int piv = -1;
    for (int r = lead; r < m.rows(); ++r)
      if (!is_zero(m.at(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(lead, j));
    K inv = K(1) / m.at(lead, c);
    for (int j = c; j < m.cols(); ++j) m.at(lead, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == lead || is_zero(m.at(r, c))) continue;
      K f = m.at(r, c);
      for (int j = c; j < m.cols(); ++j) m.at(r, j) -= f * m.at(lead, j);
    }
    res.pivot_cols.push_back(c);
    ++lead;
  }
  res.rank = static_cast<int>(res.pivot_cols.size());
  return res;
}

template <class K>
std::pair<Matrix<K>, RrefResult> rref(Matrix<K> m) {
  RrefResult r = rref_in_place(m);
  return {std::move(m), r};
}

template <class K>
int rank(const Matrix<K>& m) {
  Matrix<K> c = m;
  return rref_in_place(c).rank;
}

// Right null space; rows of the result form an RREF basis of {x : m x = 0}.
template <class K>
Matrix<K> kernel(const Matrix<K>& m) {
  Matrix<K> r = m;
  RrefResult info = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : info.pivot_cols) is_pivot[c] = true;
  int nfree = m.cols() - info.rank;
  Matrix<K> ker(nfree, m.cols());
  int row = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    ker.at(row, c) = K(1);
    for (int p = 0; p < info.rank; ++p) ker.at(row, info.pivot_cols[p]) = -r.at(p, c);
    ++row;
  }
  RrefResult k = rref_in_place(ker);
  (void)k;
  return ker;
}

// Exact determinant by Bareiss fraction-free elimination.
template <class K>
K det(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  int n = m.rows();
  if (n == 0) return K(1);
  Matrix<K> a = m;
  K prev = K(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(a.at(k, k))) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!is_zero(a.at(r, k))) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return K(0);
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  K d = a.at(n - 1, n - 1);
  return sign < 0 ? K(K(0) - K(1)) * d : d;
}

template <class K>
struct LinearSolution {
  bool consistent = false;
  std::vector<K> particular;  // empty when inconsistent
  Matrix<K> kernel_basis;     // rows span the homogeneous solutions
};

// Exact affine solution set of m x = b.
template <class K>
LinearSolution<K> solve(const Matrix<K>& m, const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  RrefResult info = rref_in_place(aug);
  LinearSolution<K> sol;
  for (int c : info.pivot_cols)
    if (c == m.cols()) return sol;  // pivot in the rhs column: inconsistent
  sol.consistent = true;
  sol.particular.assign(m.cols(), K(0));
  for (int p = 0; p < info.rank; ++p) sol.particular[info.pivot_cols[p]] = aug.at(p, m.cols());
  sol.kernel_basis = kernel(m);
  return sol;
}

template <class K>
std::vector<K> scaled_vec(const std::vector<K>& v, const K& s) {
  std::vector<K> r = v;
  for (auto& x : r) x *= s;
  return r;
}

template <class K>
void add_scaled(std::vector<K>& dst, const std::vector<K>& src, const K& s) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i] * s;
}

template <class K>
bool is_zero_vec(const std::vector<K>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace liegraph
