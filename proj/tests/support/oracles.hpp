#pragma once

// Test-only reference computations. Each one follows a different algorithm
// from the library route it is used to check.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "genchar/matrix.hpp"

namespace genchar::testing {

/// Laplace expansion along rows, memoized over the set of used columns:
/// O(n 2^n), no division and no pivoting.
template <Field T>
T laplace_det(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<T> table(std::size_t{1} << n, T(0));
  table[0] = T(1);
  for (std::size_t mask = 1; mask < table.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    T acc(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!((mask >> j) & 1U)) continue;
      const std::size_t above = static_cast<std::size_t>(std::popcount(mask >> (j + 1)));
      T term = a(row, j) * table[mask & ~(std::size_t{1} << j)];
      if (above % 2 == 1) term = -term;
      acc += term;
    }
    table[mask] = acc;
  }
  return table.back();
}

/// Gauss-Jordan on [A | I]; returns an empty matrix when A is singular.
inline Matrix<Rational> gauss_jordan_inverse(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  Matrix<Rational> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && aug(p, col).is_zero()) ++p;
    if (p == n) return {};
    if (p != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(col, j));
    const Rational inv = Rational(1) / aug(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug(i, col).is_zero()) continue;
      const Rational f = aug(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
    }
  }
  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Rational quad_form(const Matrix<Rational>& m, const Vector<Rational>& a) {
  Rational s(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += a[i] * m(i, j) * a[j];
  return s;
}

/// Squared norm of what is left of `target` after removing its projections on
/// the Gram-Schmidt orthogonalization of `basis`.
inline Rational gram_schmidt_residual_sq(const Vector<Rational>& target, const std::vector<Vector<Rational>>& basis) {
  std::vector<Vector<Rational>> ortho;
  auto project_out = [&](Vector<Rational> v) {
    for (const auto& q : ortho) {
      Rational vq(0), qq(0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        vq += v[k] * q[k];
        qq += q[k] * q[k];
      }
      const Rational c = vq / qq;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * q[k];
    }
    return v;
  };
  for (const auto& b : basis) {
    Vector<Rational> q = project_out(b);
    bool nonzero = false;
    for (const auto& x : q) nonzero = nonzero || !x.is_zero();
    if (nonzero) ortho.push_back(std::move(q));
  }
  const Vector<Rational> r = project_out(target);
  Rational s(0);
  for (const auto& x : r) s += x * x;
  return s;
}

/// Uniform integers in [lo, hi].
class IntSource {
 public:
  explicit IntSource(std::uint64_t seed) : rng_(seed) {}

  long next(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  template <Field T>
  Matrix<T> matrix(std::size_t rows, std::size_t cols, long lo = -9, long hi = 9) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(next(lo, hi));
    return m;
  }

  template <Field T>
  Vector<T> vector(std::size_t n, long lo = -9, long hi = 9) {
    Vector<T> v(n);
    for (auto& x : v) x = T(next(lo, hi));
    return v;
  }

  /// Small-denominator rationals p/q, q in [1, 4].
  Matrix<Rational> rational_matrix(std::size_t rows, std::size_t cols) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(mpz_class(next(-9, 9)), mpz_class(next(1, 4)));
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Matrix<double> to_float(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace genchar::testing
