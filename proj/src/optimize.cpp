#include "genchar/optimize.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "genchar/linalg.hpp"

namespace genchar {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::diverging: return "diverging";
    case Verdict::bounded: return "bounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

template <Field T>
void require_positive_weights(VectorView<T> a) {
  if (a.empty()) throw ShapeError("weights must be nonempty");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (sign_of(a[k]) <= 0) throw DomainError("weight a_" + std::to_string(k + 1) + " must be positive");
}

template <Field T>
bool all_zero(VectorView<T> b) {
  for (const T& x : b)
    if (!is_zero(x)) return false;
  return true;
}

template <Field T>
void finalize(DivergenceReport<T>& report) {
  const std::optional<T>* last = nullptr;
  const T* prev = nullptr;
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    const auto& v = report.values[i];
    if (!v) continue;
    if (prev != nullptr && *v < *prev) report.monotone_nondecreasing = false;
    if (!report.crossing_index && report.threshold < *v) report.crossing_index = i + 1;
    prev = &*v;
    last = &v;
  }
  if (report.certified_bounded) {
    report.verdict = Verdict::bounded;
  } else if (last != nullptr && report.monotone_nondecreasing && report.threshold < **last) {
    report.verdict = Verdict::diverging;
  } else {
    report.verdict = Verdict::inconclusive;
  }
}

// f_s differs from some combination of the other rows by an l2 vector, which
// keeps both the Gram and the shifted-Gram ratios bounded.
template <Field T>
bool rows_certify_bounded(std::span<const SequenceSpec<T>> rows, std::size_t s) {
  const auto fs = rows[s].shape();
  if (!fs) return false;
  if (fs->square_summable()) return true;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == s) continue;
    const auto fr = rows[r].shape();
    if (!fr || fr->is_zero()) continue;
    const bool aligned = fs->exponent == 0 || rows[r].start == rows[s].start;
    if (fr->exponent == fs->exponent && fr->ratio == fs->ratio && aligned) return true;
  }
  return false;
}

template <Field T>
Matrix<T> drop_index(const Matrix<T>& g, std::size_t s) {
  const std::size_t k = g.rows();
  Matrix<T> out(k - 1, k - 1);
  for (std::size_t i = 0, oi = 0; i < k; ++i) {
    if (i == s) continue;
    for (std::size_t j = 0, oj = 0; j < k; ++j) {
      if (j == s) continue;
      out(oi, oj++) = g(i, j);
    }
    ++oi;
  }
  return out;
}

template <Field T>
DivergenceReport<T> ratio_sequence(std::span<const SequenceSpec<T>> rows, std::size_t omit, std::size_t n,
                                   const T& threshold, bool shifted) {
  if (rows.empty()) throw ShapeError("ratio sequence needs at least one row");
  if (omit >= rows.size())
    throw ShapeError("omitted index " + std::to_string(omit) + " outside 0.." + std::to_string(rows.size() - 1));
  const std::size_t count = rows.size();
  std::vector<Vector<T>> values;
  values.reserve(count);
  for (const auto& spec : rows) values.push_back(spec.generate(n));

  DivergenceReport<T> report;
  report.threshold = threshold;
  report.values.reserve(n);
  Matrix<T> gram = shifted ? Matrix<T>::identity(count) : Matrix<T>(count, count);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) gram(i, j) += values[i][k] * values[j][k];
    const Matrix<T> reduced = drop_index(gram, omit);
    const T denominator = determinant(reduced);
    if (!shifted && is_singular(denominator, reduced)) {
      report.values.emplace_back(std::nullopt);
      continue;
    }
    report.values.emplace_back(determinant(gram) / denominator);
  }
  report.certified_bounded = rows_certify_bounded(rows, omit);
  finalize(report);
  return report;
}

}  // namespace

template <Field T>
ConstrainedMinimum<T> min_weighted_sum(VectorView<T> a) {
  require_positive_weights<T>(a);
  T total(0);
  for (const T& w : a) total += T(1) / w;
  const T value = T(1) / total;
  Vector<T> x;
  x.reserve(a.size());
  for (const T& w : a) x.push_back(value / w);
  return {value, std::move(x)};
}

template <Field T>
ConstrainedMinimum<T> min_weighted_sum_b(VectorView<T> a, VectorView<T> b) {
  require_positive_weights<T>(a);
  if (b.size() != a.size()) throw ShapeError("weights and constraint vector differ in length");
  if (all_zero<T>(b)) throw InfeasibleError("constraint (x, b) = 1 is infeasible for b = 0");
  T total(0);
  for (std::size_t k = 0; k < a.size(); ++k) total += b[k] * b[k] / a[k];
  const T value = T(1) / total;
  Vector<T> x;
  x.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) x.push_back(b[k] / a[k] * value);
  return {value, std::move(x)};
}

template <Field T>
bool is_positive_definite(const Matrix<T>& a) {
  if (!a.is_square()) throw ShapeError("definiteness of a non-square matrix");
  const std::size_t n = a.rows();
  T max_abs(0);
  for (const T& x : a.data())
    if (max_abs < abs_of(x)) max_abs = abs_of(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if constexpr (is_exact_v<T>) {
        if (a(i, j) != a(j, i)) return false;
      } else {
        if (std::fabs(a(i, j) - a(j, i)) > 1e-12 * max_abs) return false;
      }
    }
  Matrix<T> m = a;
  for (std::size_t k = 0; k < n; ++k) {
    const T& pivot = m(k, k);
    if constexpr (is_exact_v<T>) {
      if (pivot.sign() <= 0) return false;
    } else {
      if (!(pivot > 1e-10 * max_abs)) return false;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      const T f = m(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

template <Field T>
ConstrainedMinimum<T> min_quadratic_constrained(const Matrix<T>& a, VectorView<T> b) {
  if (!a.is_square() || a.rows() != b.size()) throw ShapeError("operator and constraint vector sizes differ");
  if (b.empty()) throw ShapeError("empty constraint vector");
  if (all_zero<T>(b)) throw InfeasibleError("constraint (x, b) = 1 is infeasible for b = 0");
  if (!is_positive_definite(a)) throw DefinitenessError("operator is not symmetric positive definite");
  Vector<T> y = solve<T>(a, b);
  const T q = dot<T>(y, b);
  const T scale = T(1) / q;
  for (auto& v : y) v *= scale;
  return {scale, std::move(y)};
}

template <Field T>
DivergenceReport<T> truncated_quadform_sequence(const SequenceSpec<T>& lambda, const SequenceSpec<T>& b,
                                                std::size_t n, const T& threshold) {
  const Vector<T> lam = lambda.generate(n);
  const Vector<T> bv = b.generate(n);
  DivergenceReport<T> report;
  report.threshold = threshold;
  report.values.reserve(n);
  T partial(0);
  for (std::size_t k = 0; k < n; ++k) {
    if (sign_of(lam[k]) <= 0)
      throw DomainError("lambda_" + std::to_string(k + 1) + " = " + to_string(lam[k]) + " is not positive");
    partial += bv[k] * bv[k] / lam[k];
    report.values.emplace_back(partial);
  }
  const auto ls = lambda.shape();
  const auto bs = b.shape();
  if (bs && bs->is_zero()) {
    report.certified_bounded = true;
  } else if (ls && bs && !ls->is_zero() && !is_zero(ls->ratio)) {
    report.certified_bounded = ((*bs * *bs) / *ls).summable();
  }
  finalize(report);
  return report;
}

template <Field T>
DivergenceReport<T> gram_ratio_sequence(std::span<const SequenceSpec<T>> rows, std::size_t omit, std::size_t n,
                                        const T& threshold) {
  return ratio_sequence(rows, omit, n, threshold, false);
}

template <Field T>
DivergenceReport<T> det_ratio_sequence(std::span<const SequenceSpec<T>> rows, std::size_t omit, std::size_t n,
                                       const T& threshold) {
  return ratio_sequence(rows, omit, n, threshold, true);
}

template <Field T>
OnesDistance<T> ones_plus_diag_distance(const SequenceSpec<T>& a, std::size_t window) {
  const Vector<T> values = a.generate(window);
  T sum(1);
  for (std::size_t k = 0; k < window; ++k) {
    if (is_zero(values[k])) throw DomainError("a_k = 0 at window position " + std::to_string(k + 1));
    sum += T(1) / (values[k] * values[k]);
  }
  Matrix<T> with_target(window + 1, window + 1);
  for (std::size_t i = 0; i <= window; ++i)
    for (std::size_t j = 0; j <= window; ++j) with_target(i, j) = T(1);
  for (std::size_t k = 0; k < window; ++k) with_target(k + 1, k + 1) += values[k] * values[k];
  const Matrix<T> basis_only = drop_index(with_target, 0);
  return {T(1) / sum, determinant(with_target) / determinant(basis_only)};
}

#define GENCHAR_INSTANTIATE(T)                                                                                    \
  template ConstrainedMinimum<T> min_weighted_sum<T>(VectorView<T>);                                             \
  template ConstrainedMinimum<T> min_weighted_sum_b<T>(VectorView<T>, VectorView<T>);                            \
  template bool is_positive_definite(const Matrix<T>&);                                                          \
  template ConstrainedMinimum<T> min_quadratic_constrained<T>(const Matrix<T>&, VectorView<T>);                  \
  template DivergenceReport<T> truncated_quadform_sequence(const SequenceSpec<T>&, const SequenceSpec<T>&,       \
                                                           std::size_t, const T&);                               \
  template DivergenceReport<T> gram_ratio_sequence(std::span<const SequenceSpec<T>>, std::size_t, std::size_t,   \
                                                   const T&);                                                    \
  template DivergenceReport<T> det_ratio_sequence(std::span<const SequenceSpec<T>>, std::size_t, std::size_t,    \
                                                  const T&);                                                     \
  template OnesDistance<T> ones_plus_diag_distance(const SequenceSpec<T>&, std::size_t);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar
