#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "genchar/linalg.hpp"
#include "genchar/matrix.hpp"
#include "genchar/subset.hpp"

namespace genchar {

/// Coefficients of p_C(t) = det(tI - C) = sum_k t^{n-k} (-1)^k c_k, with c_0 = 1,
/// c_1 = tr C and c_n = det C.
template <Field T>
struct CharPolyCoeffs {
  std::vector<T> c;

  std::size_t degree() const { return c.size() - 1; }

  /// p_C(t) by Horner's rule.
  T evaluate(const T& t) const {
    T acc(0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      acc *= t;
      acc += (k % 2 == 0) ? c[k] : T(-c[k]);
    }
    return acc;
  }

  friend bool operator==(const CharPolyCoeffs&, const CharPolyCoeffs&) = default;
};

/// Upper bound on n for anything that enumerates all 2^n subsets.
struct SubsetCap {
  static constexpr unsigned default_limit = 16;
  static constexpr unsigned hard_limit_float = 24;
  static constexpr unsigned hard_limit_exact = 20;

  unsigned limit = default_limit;

  /// Throws CapacityError when n exceeds the limit, or the limit exceeds the
  /// hard ceiling for the mode.
  void check(unsigned n, Mode mode) const;
};

/// The generalized characteristic polynomial P_C(lambda) = det(C + diag(lambda)),
/// stored as its 2^n multilinear coefficients: coeff(alpha) multiplies
/// lambda_alpha = prod_{k in alpha} lambda_k and equals A^alpha_alpha(C).
template <Field T>
class GenCharPoly {
 public:
  GenCharPoly(unsigned n, std::vector<T> coeffs);

  unsigned size() const { return n_; }
  const T& operator[](SubsetIndex alpha) const;
  const T& coeff(std::uint64_t mask) const { return coeffs_[mask]; }
  /// Dense, indexed by mask.
  std::span<const T> coefficients() const { return coeffs_; }

 private:
  unsigned n_;
  std::vector<T> coeffs_;
};

/// Faddeev-LeVerrier recursion over the auxiliary matrices M_k = C M_{k-1} + a_{k-1} I.
template <Field T>
CharPolyCoeffs<T> char_coeffs_faddeev(const Matrix<T>& c);

/// c_k as (1/k!) times the determinant of the banded k x k matrix of power traces.
template <Field T>
T char_coeff_trace_det(const Matrix<T>& c, std::size_t k);

/// c_k as the sum of all principal minors of size k.
template <Field T>
T char_coeff_minor_sum(const Matrix<T>& c, std::size_t k);

/// All coefficients by one route; convenience over the per-k functions.
template <Field T>
CharPolyCoeffs<T> char_coeffs_trace_det(const Matrix<T>& c);
template <Field T>
CharPolyCoeffs<T> char_coeffs_minor_sum(const Matrix<T>& c);

/// Each coefficient is an independent complement-minor determinant.
template <Field T>
GenCharPoly<T> gen_charpoly(const Matrix<T>& c, SubsetCap cap = {});

/// Cofactor form sum_alpha lambda_alpha A^alpha_alpha(C).
template <Field T>
T eval_gen_charpoly(const GenCharPoly<T>& p, VectorView<T> lambda);

/// eval_gen_charpoly at every point, sharing one fold buffer.
template <Field T>
std::vector<T> eval_gen_charpoly_grid(const GenCharPoly<T>& p, std::span<const Vector<T>> points);

/// Minor form (prod lambda_k) sum_alpha M^alpha_alpha(C) / lambda_alpha, reading
/// M^alpha_alpha from the stored complement coefficient. Throws DomainError
/// when some lambda_k is zero.
template <Field T>
T eval_gen_charpoly_minor_form(const GenCharPoly<T>& p, VectorView<T> lambda);

/// Minor form evaluated straight from C's principal minors.
template <Field T>
T eval_gen_charpoly_minor_form(const Matrix<T>& c, VectorView<T> lambda, SubsetCap cap = {});

}  // namespace genchar
