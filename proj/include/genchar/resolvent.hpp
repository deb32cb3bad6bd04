#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "genchar/charpoly.hpp"
#include "genchar/linalg.hpp"
#include "genchar/matrix.hpp"

namespace genchar {

/// Subset terms of the generalized resolvent (C + diag(lambda))^{-1}.
///
/// For every nonempty alpha the block A^T(C_alpha) (the adjugate-transpose of
/// the principal submatrix on alpha, [[1]] when |alpha| = 1) is kept compact;
/// `term` embeds it at rows/cols alpha of an n x n zero matrix. The principal
/// minors det(C_alpha) gathered along the way give P_C, exposed as `charpoly`.
template <Field T>
class GenResolventTerms {
 public:
  GenResolventTerms(Matrix<T> c, std::vector<Matrix<T>> blocks, GenCharPoly<T> poly);

  unsigned size() const { return poly_.size(); }
  const Matrix<T>& matrix() const { return c_; }
  const GenCharPoly<T>& charpoly() const { return poly_; }

  /// A^T(C_alpha); alpha must be nonempty.
  const Matrix<T>& block(SubsetIndex alpha) const;
  /// embed_subset(block(alpha), alpha, n).
  Matrix<T> term(SubsetIndex alpha) const;

 private:
  Matrix<T> c_;
  std::vector<Matrix<T>> blocks_;  // indexed by mask; blocks_[0] unused
  GenCharPoly<T> poly_;
};

template <Field T>
GenResolventTerms<T> gen_resolvent_terms(const Matrix<T>& c, SubsetCap cap = {});

/// (prod lambda_k / P_C(lambda)) sum_{alpha != 0} term(alpha) / lambda_alpha.
/// Throws DomainError if some lambda_k = 0 and SingularError if P_C(lambda) = 0.
template <Field T>
Matrix<T> eval_gen_resolvent(const GenResolventTerms<T>& r, VectorView<T> lambda);

template <Field T>
Matrix<T> eval_gen_resolvent(const Matrix<T>& c, VectorView<T> lambda, SubsetCap cap = {});

/// (C(lambda)^{-1} a, a) from the subset quadratic forms (A^T(C_alpha) a_alpha, a_alpha);
/// the full inverse is never assembled.
template <Field T>
T quad_form_gen(const GenResolventTerms<T>& r, VectorView<T> lambda, VectorView<T> a);

template <Field T>
T quad_form_gen(const Matrix<T>& c, VectorView<T> lambda, VectorView<T> a, SubsetCap cap = {});

/// (tI - C)^{-1} = (1/p_C(t)) sum_k t^{n-k} (-1)^{k+1} sum_{|alpha|=k} A^T(C_alpha).
/// Throws SingularError carrying p_C(t) when it vanishes.
template <Field T>
Matrix<T> classical_resolvent(const Matrix<T>& c, const T& t, SubsetCap cap = {});

/// det(A + a (x) a) / det(A), which equals 1 + (A^{-1} a, a).
template <Field T>
T rank_one_det_ratio(const Matrix<T>& a_mat, VectorView<T> a);

/// 1 + (C(lambda)^{-1} a, a) as det(C(lambda) + a (x) a) / det C(lambda).
template <Field T>
T one_plus_quadform(const Matrix<T>& c, VectorView<T> lambda, VectorView<T> a);

/// Row 0 of `rows` is the vector a; rows 1..m-1 stack the g_k column-wise
/// (g_k is column k below the first row). lambda has one positive entry per column.
template <Field T>
struct GramReductionInput {
  Matrix<T> rows;
  Vector<T> lambda;

  void validate() const;
  Vector<T> a() const { return rows.row_vector(0); }
  /// C = gram(g_1, ..., g_n); the zero matrix when m = 1.
  Matrix<T> gram_base() const;
};

/// X with x_{rk} = a_{rk} / sqrt(lambda_k). In exact mode this requires every
/// lambda_k to be the square of a rational and returns nullopt otherwise.
template <Field T>
std::optional<Matrix<T>> scaled_rows(const GramReductionInput<T>& input);

/// det(I_m + gram(y_1..y_m)) / det(I_{m-1} + gram(y_2..y_m)) where y_r are the
/// rows of X. Equals 1 + (C(lambda)^{-1} a, a) with C = gram_base().
template <Field T>
T gram_reduction_ratio(const GramReductionInput<T>& input);

}  // namespace genchar
