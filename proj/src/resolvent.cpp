#include "genchar/resolvent.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace genchar {

template <Field T>
GenResolventTerms<T>::GenResolventTerms(Matrix<T> c, std::vector<Matrix<T>> blocks, GenCharPoly<T> poly)
    : c_(std::move(c)), blocks_(std::move(blocks)), poly_(std::move(poly)) {
  if (blocks_.size() != poly_.coefficients().size() || c_.rows() != poly_.size())
    throw ShapeError("resolvent terms do not match the polynomial size");
}

template <Field T>
const Matrix<T>& GenResolventTerms<T>::block(SubsetIndex alpha) const {
  if (alpha.ambient() != size()) throw ShapeError("subset size does not match resolvent");
  if (alpha.is_empty()) throw ShapeError("the empty subset has no resolvent term");
  return blocks_[alpha.mask()];
}

template <Field T>
Matrix<T> GenResolventTerms<T>::term(SubsetIndex alpha) const {
  return embed_subset(block(alpha), alpha, size());
}

namespace {

template <Field T>
void check_lambda(unsigned n, VectorView<T> lambda, bool nonzero) {
  if (lambda.size() != n)
    throw ShapeError("lambda has " + std::to_string(lambda.size()) + " entries, expected " + std::to_string(n));
  if (!nonzero) return;
  for (std::size_t k = 0; k < n; ++k)
    if (is_zero(lambda[k]))
      throw DomainError("generalized resolvent needs lambda_" + std::to_string(k + 1) + " != 0");
}

// lambda_alpha for every mask.
template <Field T>
std::vector<T> subset_products(VectorView<T> lambda) {
  std::vector<T> out(std::size_t{1} << lambda.size());
  out[0] = T(1);
  for (std::size_t mask = 1; mask < out.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    out[mask] = out[mask & (mask - 1)] * lambda[low];
  }
  return out;
}

template <Field T>
T checked_poly_value(const GenResolventTerms<T>& r, VectorView<T> lambda) {
  T p = eval_gen_charpoly(r.charpoly(), lambda);
  if (is_singular(p, add_diagonal(r.matrix(), lambda)))
    throw SingularError("C + diag(lambda) is singular: P_C(lambda) vanishes", to_string(p));
  return p;
}

}  // namespace

template <Field T>
GenResolventTerms<T> gen_resolvent_terms(const Matrix<T>& c, SubsetCap cap) {
  if (!c.is_square()) throw ShapeError("resolvent of a non-square matrix");
  const auto n = static_cast<unsigned>(c.rows());
  cap.check(n, mode_of_v<T>);
  const std::size_t total = std::size_t{1} << n;
  const std::uint64_t full = SubsetIndex::full_mask(n);
  std::vector<Matrix<T>> blocks(total);
  std::vector<T> coeffs(total);
  coeffs[full] = T(1);
  for (std::size_t mask = 1; mask < total; ++mask) {
    const SubsetIndex alpha(mask, n);
    Matrix<T> sub = submatrix(c, alpha, alpha);
    coeffs[full ^ mask] = determinant(sub);
    blocks[mask] = adjugate_transpose(sub);
  }
  return {c, std::move(blocks), GenCharPoly<T>(n, std::move(coeffs))};
}

template <Field T>
Matrix<T> eval_gen_resolvent(const GenResolventTerms<T>& r, VectorView<T> lambda) {
  const unsigned n = r.size();
  check_lambda<T>(n, lambda, true);
  const T p = checked_poly_value(r, lambda);
  const auto products = subset_products<T>(lambda);
  const std::uint64_t full = SubsetIndex::full_mask(n);
  Matrix<T> out(n, n);
  for (std::size_t mask = 1; mask < products.size(); ++mask) {
    // prod_k lambda_k / lambda_alpha is the product over the complement.
    const T& weight = products[full ^ mask];
    const SubsetIndex alpha(mask, n);
    const Matrix<T>& b = r.block(alpha);
    const auto pos = alpha.positions();
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j) out(pos[i], pos[j]) += weight * b(i, j);
  }
  const T inv = T(1) / p;
  return out * inv;
}

template <Field T>
Matrix<T> eval_gen_resolvent(const Matrix<T>& c, VectorView<T> lambda, SubsetCap cap) {
  return eval_gen_resolvent(gen_resolvent_terms(c, cap), lambda);
}

template <Field T>
T quad_form_gen(const GenResolventTerms<T>& r, VectorView<T> lambda, VectorView<T> a) {
  const unsigned n = r.size();
  check_lambda<T>(n, lambda, true);
  if (a.size() != n) throw ShapeError("quadratic form vector has the wrong length");
  const T p = checked_poly_value(r, lambda);
  const auto products = subset_products<T>(lambda);
  const std::uint64_t full = SubsetIndex::full_mask(n);
  T sum(0);
  for (std::size_t mask = 1; mask < products.size(); ++mask) {
    const SubsetIndex alpha(mask, n);
    const Vector<T> a_alpha = subvector<T>(a, alpha);
    const Vector<T> image = r.block(alpha) * std::span<const T>(a_alpha);
    sum += products[full ^ mask] * dot<T>(image, a_alpha);
  }
  return sum / p;
}

template <Field T>
T quad_form_gen(const Matrix<T>& c, VectorView<T> lambda, VectorView<T> a, SubsetCap cap) {
  return quad_form_gen(gen_resolvent_terms(c, cap), lambda, a);
}

template <Field T>
Matrix<T> classical_resolvent(const Matrix<T>& c, const T& t, SubsetCap cap) {
  if (!c.is_square()) throw ShapeError("resolvent of a non-square matrix");
  const auto n = static_cast<unsigned>(c.rows());
  const T p = char_coeffs_faddeev(c).evaluate(t);
  Matrix<T> shifted = Matrix<T>::identity(n) * t - c;
  if (is_singular(p, shifted)) throw SingularError("tI - C is singular: p_C(t) vanishes", to_string(p));
  const auto terms = gen_resolvent_terms(c, cap);
  std::vector<T> t_powers(n + 1, T(1));
  for (std::size_t k = 1; k <= n; ++k) t_powers[k] = t_powers[k - 1] * t;
  Matrix<T> out(n, n);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const SubsetIndex alpha(mask, n);
    const unsigned k = alpha.count();
    const T weight = (k % 2 == 1) ? t_powers[n - k] : T(-t_powers[n - k]);
    const Matrix<T>& b = terms.block(alpha);
    const auto pos = alpha.positions();
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j) out(pos[i], pos[j]) += weight * b(i, j);
  }
  const T inv = T(1) / p;
  return out * inv;
}

template <Field T>
T rank_one_det_ratio(const Matrix<T>& a_mat, VectorView<T> a) {
  if (!a_mat.is_square() || a_mat.rows() != a.size()) throw ShapeError("rank-one update size mismatch");
  const T det = determinant(a_mat);
  if (is_singular(det, a_mat)) throw SingularError("rank-one ratio needs det A != 0", to_string(det));
  const Vector<T> av(a.begin(), a.end());
  return determinant(a_mat + rank_one(av)) / det;
}

template <Field T>
T one_plus_quadform(const Matrix<T>& c, VectorView<T> lambda, VectorView<T> a) {
  if (!c.is_square() || c.rows() != lambda.size() || a.size() != lambda.size())
    throw ShapeError("quadratic form operands have mismatched sizes");
  const Matrix<T> shifted = add_diagonal(c, lambda);
  const T det = determinant(shifted);
  if (is_singular(det, shifted)) throw SingularError("C(lambda) is singular", to_string(det));
  const Vector<T> av(a.begin(), a.end());
  return determinant(shifted + rank_one(av)) / det;
}

template <Field T>
void GramReductionInput<T>::validate() const {
  if (rows.rows() < 1) throw ShapeError("Gram reduction needs at least one row");
  if (rows.rows() > rows.cols())
    throw ShapeError("Gram reduction needs m <= n (got " + std::to_string(rows.rows()) + "x" +
                     std::to_string(rows.cols()) + ")");
  if (lambda.size() != rows.cols()) throw ShapeError("lambda length must equal the number of columns");
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (sign_of(lambda[k]) <= 0)
      throw DomainError("Gram reduction needs lambda_" + std::to_string(k + 1) + " > 0");
}

template <Field T>
Matrix<T> GramReductionInput<T>::gram_base() const {
  const std::size_t m = rows.rows();
  const std::size_t n = rows.cols();
  Matrix<T> c(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = k; r < n; ++r) {
      T s(0);
      for (std::size_t i = 1; i < m; ++i) s += rows(i, k) * rows(i, r);
      c(r, k) = s;
      c(k, r) = s;
    }
  return c;
}

template <Field T>
std::optional<Matrix<T>> scaled_rows(const GramReductionInput<T>& input) {
  input.validate();
  Matrix<T> x = input.rows;
  for (std::size_t k = 0; k < x.cols(); ++k) {
    T root;
    if constexpr (is_exact_v<T>) {
      auto r = input.lambda[k].exact_sqrt();
      if (!r) return std::nullopt;
      root = *std::move(r);
    } else {
      root = std::sqrt(input.lambda[k]);
    }
    for (std::size_t r = 0; r < x.rows(); ++r) x(r, k) /= root;
  }
  return x;
}

template <Field T>
T gram_reduction_ratio(const GramReductionInput<T>& input) {
  input.validate();
  const std::size_t m = input.rows.rows();
  Matrix<T> g(m, m);
  if (auto x = scaled_rows(input)) {
    std::vector<Vector<T>> ys;
    for (std::size_t r = 0; r < m; ++r) ys.push_back(x->row_vector(r));
    g = gram_matrix<T>(ys);
  } else {
    // (y_r, y_s) = sum_k a_rk a_sk / lambda_k needs no square roots.
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = r; s < m; ++s) {
        T acc(0);
        for (std::size_t k = 0; k < input.lambda.size(); ++k)
          acc += input.rows(r, k) * input.rows(s, k) / input.lambda[k];
        g(r, s) = acc;
        g(s, r) = acc;
      }
  }
  Matrix<T> numerator = g + Matrix<T>::identity(m);
  Matrix<T> tail(m - 1, m - 1);
  for (std::size_t r = 1; r < m; ++r)
    for (std::size_t s = 1; s < m; ++s) tail(r - 1, s - 1) = numerator(r, s);
  return determinant(numerator) / determinant(tail);
}

#define GENCHAR_INSTANTIATE(T)                                                                      \
  template class GenResolventTerms<T>;                                                             \
  template struct GramReductionInput<T>;                                                           \
  template GenResolventTerms<T> gen_resolvent_terms(const Matrix<T>&, SubsetCap);                  \
  template Matrix<T> eval_gen_resolvent<T>(const GenResolventTerms<T>&, VectorView<T>);            \
  template Matrix<T> eval_gen_resolvent<T>(const Matrix<T>&, VectorView<T>, SubsetCap);            \
  template T quad_form_gen<T>(const GenResolventTerms<T>&, VectorView<T>, VectorView<T>);          \
  template T quad_form_gen<T>(const Matrix<T>&, VectorView<T>, VectorView<T>, SubsetCap);          \
  template Matrix<T> classical_resolvent(const Matrix<T>&, const T&, SubsetCap);                   \
  template T rank_one_det_ratio<T>(const Matrix<T>&, VectorView<T>);                               \
  template T one_plus_quadform<T>(const Matrix<T>&, VectorView<T>, VectorView<T>);                 \
  template std::optional<Matrix<T>> scaled_rows(const GramReductionInput<T>&);                     \
  template T gram_reduction_ratio(const GramReductionInput<T>&);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar
