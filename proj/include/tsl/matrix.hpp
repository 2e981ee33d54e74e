#ifndef TSL_MATRIX_HPP
#define TSL_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/poly.hpp"
#include "tsl/scalar.hpp"

namespace tsl {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

template <typename T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix<T> out(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (detail::coeff_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

template <typename T>
Matrix<T> matrix_power(Matrix<T> base, unsigned e) {
  Matrix<T> out = identity_matrix<T>(base.size());
  while (e > 0) {
    if (e & 1U) out = out * base;
    base = base * base;
    e >>= 1U;
  }
  return out;
}

/// Exact determinant by fraction-free-enough Gaussian elimination over a field.
template <typename T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::coeff_zero(m[p][c])) ++p;
    if (p == n) return T(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (detail::coeff_zero(m[r][c])) continue;
      const T f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Exact rank over a field.
template <typename T>
int rank(Matrix<T> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && detail::coeff_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (detail::coeff_zero(m[i][c])) continue;
      const T f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

/// Numeric rank: pivots below threshold * (largest entry) count as zero.
inline int numeric_rank(Matrix<Complex> m, const Real& threshold) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  Real scale = 0;
  for (const auto& row : m)
    for (const auto& x : row)
      if (abs(x) > scale) scale = abs(x);
  if (scale == 0) return 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    Real best = abs(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i)
      if (abs(m[i][c]) > best) {
        best = abs(m[i][c]);
        p = i;
      }
    if (best <= threshold * scale) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Complex f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

/// Characteristic polynomial det(x I - M), ascending coefficients (Faddeev-LeVerrier).
template <typename T>
Poly<T> characteristic_polynomial(const Matrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k + 1];
    m = a * m;
    T tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
    c[n - k] = -tr / T(static_cast<int>(k));
  }
  return Poly<T>(std::move(c));
}

template <typename T>
Matrix<Complex> to_complex_matrix(const Matrix<T>& m) {
  Matrix<Complex> out;
  for (const auto& row : m) {
    std::vector<Complex> r;
    for (const auto& x : row) r.push_back(to_complex(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tsl

#endif  // TSL_MATRIX_HPP
