#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace liegraph {

struct SymEigenResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi eigensolver for dense symmetric matrices (row-major, n*n).
// Sweeps until the off-diagonal Frobenius norm drops below 1e-12 * ||m||,
// capped at 100 sweeps.
inline SymEigenResult sym_eigen(const std::vector<double>& m, int n, double sym_tol = 1e-9) {
  if (static_cast<int>(m.size()) != n * n) throw std::invalid_argument("sym_eigen: bad shape");
  double norm = 0.0;
  for (double x : m) norm += x * x;
  norm = std::sqrt(norm);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m[i * n + j] - m[j * n + i]) > sym_tol * std::max(1.0, norm))
        throw std::invalid_argument("sym_eigen: matrix not symmetric within tolerance");

  std::vector<double> a = m;
  // Symmetrize exactly so rotations stay consistent.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = v;
    }
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double stop = 1e-12 * std::max(norm, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a[i * n + j] * a[i * n + j];
    if (std::sqrt(off) < stop) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (apq == 0.0) continue;
        double app = a[p * n + p], aqq = a[q * n + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x * n + x] < a[y * n + y]; });
  SymEigenResult res;
  res.values.resize(n);
  res.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    res.values[k] = a[order[k] * n + order[k]];
    for (int i = 0; i < n; ++i) res.vectors[k][i] = v[i * n + order[k]];
  }
  return res;
}

}  // namespace liegraph
