#pragma once

#include <span>
#include <vector>

#include "genchar/matrix.hpp"
#include "genchar/subset.hpp"

namespace genchar {

/// Rows and columns selected by the masks, ascending index order. Rectangular
/// selections are allowed.
template <Field T>
Matrix<T> submatrix(const Matrix<T>& c, SubsetIndex rows, SubsetIndex cols);

/// det(submatrix(c, rows, cols)); the selections must have equal size >= 1.
template <Field T>
T minor(const Matrix<T>& c, SubsetIndex rows, SubsetIndex cols);

/// A^alpha_alpha(C) = M^{complement}_{complement}(C). The full set gives 1 and
/// the empty set gives det C.
template <Field T>
T principal_cofactor(const Matrix<T>& c, SubsetIndex alpha);

/// Cofactor matrix: entry (i, j) is (-1)^{i+j} times the minor with row i and
/// column j removed. Its transpose is the classical adjugate det(C) C^{-1}.
/// A 1x1 input yields [[1]].
template <Field T>
Matrix<T> adjugate(const Matrix<T>& c);

/// transpose(adjugate(c)); satisfies adj * C = C * adj = det(C) I.
template <Field T>
Matrix<T> adjugate_transpose(const Matrix<T>& c);

/// Exact mode: fraction-free (Bareiss) elimination over integers after
/// clearing row denominators. Float mode: partial pivoting. 0x0 gives 1.
template <Field T>
T determinant(const Matrix<T>& c);

/// Places the r x r block b at rows/cols alpha of an n x n zero matrix.
template <Field T>
Matrix<T> embed_subset(const Matrix<T>& b, SubsetIndex alpha, unsigned n);

/// Entry (k, m) = (x_k, x_m).
template <Field T>
Matrix<T> gram_matrix(std::span<const Vector<T>> vectors);

/// a (x) a = (a_k a_r).
template <Field T>
Matrix<T> rank_one(const Vector<T>& a);

/// Restriction of a to the members of alpha.
template <Field T>
Vector<T> subvector(VectorView<T> a, SubsetIndex alpha);

/// Solves A x = b by Gaussian elimination; throws SingularError.
template <Field T>
Vector<T> solve(const Matrix<T>& a, VectorView<T> b);

/// Exact mode: det == 0. Float mode: det == 0 or the smallest partial-pivot
/// elimination pivot of m is at most 1e-12 ||m||_inf, the same test `solve` applies.
template <Field T>
bool is_singular(const T& det, const Matrix<T>& m);

}  // namespace genchar
