#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cqm/taylor.hpp"

namespace cqm {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline double zero_like(double) { return 0.0; }
inline Taylor zero_like(const Taylor& t) { return t.constant(0.0); }
inline double one_like(double) { return 1.0; }
inline Taylor one_like(const Taylor& t) { return t.constant(1.0); }

// Gauss-Jordan inverse with partial pivoting on the leading values.
template <class T>
Matrix<T> inverse(Matrix<T> a) {
  const int n = static_cast<int>(a.size());
  Matrix<T> r(n, std::vector<T>(n, zero_like(a[0][0])));
  for (int i = 0; i < n; ++i) r[i][i] = one_like(a[0][0]);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int k = c + 1; k < n; ++k)
      if (std::abs(value_of(a[k][c])) > std::abs(value_of(a[piv][c]))) piv = k;
    if (std::abs(value_of(a[piv][c])) < 1e-300) throw std::domain_error("singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(r[c], r[piv]);
    const T inv = 1.0 / a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * inv;
      r[c][j] = r[c][j] * inv;
    }
    for (int k = 0; k < n; ++k) {
      if (k == c) continue;
      const T f = a[k][c];
      for (int j = 0; j < n; ++j) {
        a[k][j] = a[k][j] - f * a[c][j];
        r[k][j] = r[k][j] - f * r[c][j];
      }
    }
  }
  return r;
}

}  // namespace cqm
