#include "genchar/gram.hpp"

#include <string>

namespace genchar {

template <Field T>
void SpanProblem<T>::validate() const {
  if (basis.empty()) throw ShapeError("span problem needs a nonempty basis");
  for (const auto& v : basis)
    if (v.size() != target.size()) throw ShapeError("span problem vectors have unequal lengths");
}

namespace {

template <Field T>
void check_basis(const Matrix<T>& gram, const T& det) {
  if (is_singular(det, gram))
    throw DegenerateBasisError("basis vectors are linearly dependent (Gram determinant " + to_string(det) + ")");
}

}  // namespace

template <Field T>
T gram_det(std::span<const Vector<T>> vectors) {
  return determinant(gram_matrix(vectors));
}

template <Field T>
T distance_sq_gram(const SpanProblem<T>& p) {
  p.validate();
  const Matrix<T> g_basis = gram_matrix<T>(p.basis);
  const T denominator = determinant(g_basis);
  check_basis(g_basis, denominator);
  std::vector<Vector<T>> all;
  all.reserve(p.basis.size() + 1);
  all.push_back(p.target);
  all.insert(all.end(), p.basis.begin(), p.basis.end());
  return gram_det<T>(all) / denominator;
}

template <Field T>
SpanSolution<T> distance_sq_solve(const SpanProblem<T>& p) {
  p.validate();
  const Matrix<T> a = gram_matrix<T>(p.basis);
  check_basis(a, determinant(a));
  Vector<T> b;
  b.reserve(p.basis.size());
  for (const auto& f : p.basis) b.push_back(dot<T>(f, p.target));
  Vector<T> t = solve<T>(a, b);
  T d = dot<T>(p.target, p.target) - dot<T>(t, b);
  return {std::move(d), std::move(t)};
}

template <Field T>
T delta_functional(std::span<const Vector<T>> vectors) {
  if (vectors.empty()) throw ShapeError("delta functional needs at least one vector");
  const std::size_t k = vectors.size();
  Matrix<T> shifted = gram_matrix(vectors) + Matrix<T>::identity(k);
  Matrix<T> tail(k - 1, k - 1);
  for (std::size_t i = 1; i < k; ++i)
    for (std::size_t j = 1; j < k; ++j) tail(i - 1, j - 1) = shifted(i, j);
  return determinant(shifted) / determinant(tail) - T(1);
}

#define GENCHAR_INSTANTIATE(T)                                           \
  template struct SpanProblem<T>;                                       \
  template T gram_det(std::span<const Vector<T>>);                      \
  template T distance_sq_gram(const SpanProblem<T>&);                   \
  template SpanSolution<T> distance_sq_solve(const SpanProblem<T>&);    \
  template T delta_functional(std::span<const Vector<T>>);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar
