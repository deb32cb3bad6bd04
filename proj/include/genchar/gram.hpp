#pragma once

#include <span>
#include <vector>

#include "genchar/linalg.hpp"
#include "genchar/matrix.hpp"

namespace genchar {

/// Distance from `target` to the span of `basis`; all vectors share one length.
template <Field T>
struct SpanProblem {
  Vector<T> target;
  std::vector<Vector<T>> basis;

  /// Throws ShapeError for an empty basis or ragged lengths.
  void validate() const;
};

template <Field T>
struct SpanSolution {
  T distance_sq;
  Vector<T> coefficients;  // t solving gram(basis) t = ((f_k, f_0))_k
};

/// Gram determinant det(gram(vectors)); nonnegative for real vectors.
template <Field T>
T gram_det(std::span<const Vector<T>> vectors);

/// Gram(f_0, f_1..f_n) / Gram(f_1..f_n). Throws DegenerateBasisError when the
/// basis is dependent.
template <Field T>
T distance_sq_gram(const SpanProblem<T>& p);

/// (f_0, f_0) - (A^{-1} b, b) with A = gram(basis) and b_k = (f_k, f_0).
template <Field T>
SpanSolution<T> distance_sq_solve(const SpanProblem<T>& p);

/// det(I + gram(y_1..y_k)) / det(I + gram(y_2..y_k)) - 1; the denominator is 1 for k = 1.
template <Field T>
T delta_functional(std::span<const Vector<T>> vectors);

}  // namespace genchar
