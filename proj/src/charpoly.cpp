#include "genchar/charpoly.hpp"

#include <string>
#include <utility>

namespace genchar {

void SubsetCap::check(unsigned n, Mode mode) const {
  const unsigned hard = mode == Mode::exact ? hard_limit_exact : hard_limit_float;
  if (limit > hard)
    throw CapacityError("subset cap " + std::to_string(limit) + " exceeds the " + std::string(mode_name(mode)) +
                        "-mode ceiling of " + std::to_string(hard));
  if (n > limit)
    throw CapacityError("n = " + std::to_string(n) + " exceeds the subset cap of " + std::to_string(limit) +
                        " (raise it with --cap or GENCHAR_SUBSET_CAP)");
}

template <Field T>
GenCharPoly<T>::GenCharPoly(unsigned n, std::vector<T> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n > SubsetIndex::max_size || coeffs_.size() != (std::size_t{1} << n))
    throw ShapeError("generalized characteristic polynomial needs 2^n coefficients");
}

template <Field T>
const T& GenCharPoly<T>::operator[](SubsetIndex alpha) const {
  if (alpha.ambient() != n_) throw ShapeError("subset size does not match polynomial");
  return coeffs_[alpha.mask()];
}

namespace {

template <Field T>
void require_square(const Matrix<T>& c) {
  if (!c.is_square()) throw ShapeError("characteristic polynomial of a non-square matrix");
}

template <Field T>
void require_lambda(unsigned n, std::size_t len) {
  if (len != n)
    throw ShapeError("lambda has " + std::to_string(len) + " entries, expected " + std::to_string(n));
}

#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__)
#define GENCHAR_FOLD_CLONES __attribute__((target_clones("fma", "default")))
#else
#define GENCHAR_FOLD_CLONES
#endif

GENCHAR_FOLD_CLONES
double fold_kernel(const double* c, const double* w, std::size_t n, double* buf) {
  std::size_t half = std::size_t{1} << (n - 1);
  const double top = w[n - 1];
  for (std::size_t i = 0; i < half; ++i) buf[i] = c[i] + top * c[i + half];
  for (std::size_t b = n - 1; b-- > 0;) {
    half >>= 1;
    const double wk = w[b];
    for (std::size_t i = 0; i < half; ++i) buf[i] += wk * buf[i + half];
  }
  return buf[0];
}

// sum_alpha w_alpha c[alpha] with w_alpha = prod_{k in alpha} w_k, folding the
// highest variable first so each pass reads two contiguous halves.
template <Field T>
T fold_multilinear(std::span<const T> c, std::span<const T> w, std::vector<T>& buf) {
  const std::size_t n = w.size();
  if (n == 0) return c[0];
  std::size_t half = std::size_t{1} << (n - 1);
  if (buf.size() < half) buf.resize(half);
  if constexpr (is_exact_v<T>) {
    {
      const T& wk = w[n - 1];
      for (std::size_t i = 0; i < half; ++i) {
        buf[i] = c[i + half];
        buf[i] *= wk;
        buf[i] += c[i];
      }
    }
    T scratch;
    for (std::size_t b = n - 1; b-- > 0;) {
      half >>= 1;
      const T& wk = w[b];
      for (std::size_t i = 0; i < half; ++i) {
        scratch = buf[i + half];
        scratch *= wk;
        buf[i] += scratch;
      }
    }
    return buf[0];
  } else {
    return fold_kernel(c.data(), w.data(), n, buf.data());
  }
}

template <Field T>
T fold_multilinear(std::span<const T> c, std::span<const T> w) {
  std::vector<T> buf;
  return fold_multilinear(c, w, buf);
}

template <Field T>
T factorial(std::size_t k) {
  T f(1);
  for (std::size_t i = 2; i <= k; ++i) f *= T(i);
  return f;
}

}  // namespace

template <Field T>
CharPolyCoeffs<T> char_coeffs_faddeev(const Matrix<T>& c) {
  require_square(c);
  const std::size_t n = c.rows();
  // det(tI - C) = sum_k a_k t^{n-k}; a_k = (-1)^k c_k.
  std::vector<T> out(n + 1, T(0));
  out[0] = T(1);
  Matrix<T> m(n, n);
  T a_prev(1);
  for (std::size_t k = 1; k <= n; ++k) {
    m = c * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += a_prev;
    const T a_k = -(c * m).trace() / T(k);
    out[k] = (k % 2 == 0) ? a_k : T(-a_k);
    a_prev = a_k;
  }
  return {std::move(out)};
}

template <Field T>
T char_coeff_trace_det(const Matrix<T>& c, std::size_t k) {
  require_square(c);
  if (k < 1 || k > c.rows()) throw ShapeError("coefficient index " + std::to_string(k) + " out of range");
  std::vector<T> traces(k + 1, T(0));
  Matrix<T> power = c;
  traces[1] = power.trace();
  for (std::size_t p = 2; p <= k; ++p) {
    power = power * c;
    traces[p] = power.trace();
  }
  Matrix<T> band(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) band(i, j) = traces[i - j + 1];
    if (i + 1 < k) band(i, i + 1) = T(k - 1 - i);
  }
  return determinant(band) / factorial<T>(k);
}

template <Field T>
T char_coeff_minor_sum(const Matrix<T>& c, std::size_t k) {
  require_square(c);
  const std::size_t n = c.rows();
  if (k < 1 || k > n) throw ShapeError("coefficient index " + std::to_string(k) + " out of range");
  const auto dim = static_cast<unsigned>(n);
  T sum(0);
  // Gosper's hack over the k-subsets of n.
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = SubsetIndex::full_mask(dim);
  while (mask <= limit) {
    const SubsetIndex alpha(mask, dim);
    sum += minor(c, alpha, alpha);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    if (ripple == 0 || ripple > limit + 1) break;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  return sum;
}

template <Field T>
CharPolyCoeffs<T> char_coeffs_trace_det(const Matrix<T>& c) {
  std::vector<T> out{T(1)};
  for (std::size_t k = 1; k <= c.rows(); ++k) out.push_back(char_coeff_trace_det(c, k));
  return {std::move(out)};
}

template <Field T>
CharPolyCoeffs<T> char_coeffs_minor_sum(const Matrix<T>& c) {
  std::vector<T> out{T(1)};
  for (std::size_t k = 1; k <= c.rows(); ++k) out.push_back(char_coeff_minor_sum(c, k));
  return {std::move(out)};
}

template <Field T>
GenCharPoly<T> gen_charpoly(const Matrix<T>& c, SubsetCap cap) {
  require_square(c);
  const auto n = static_cast<unsigned>(c.rows());
  cap.check(n, mode_of_v<T>);
  const std::size_t total = std::size_t{1} << n;
  std::vector<T> coeffs(total);
  for (std::size_t mask = 0; mask < total; ++mask) coeffs[mask] = principal_cofactor(c, SubsetIndex(mask, n));
  return {n, std::move(coeffs)};
}

template <Field T>
T eval_gen_charpoly(const GenCharPoly<T>& p, VectorView<T> lambda) {
  require_lambda<T>(p.size(), lambda.size());
  return fold_multilinear<T>(p.coefficients(), lambda);
}

template <Field T>
std::vector<T> eval_gen_charpoly_grid(const GenCharPoly<T>& p, std::span<const Vector<T>> points) {
  std::vector<T> out;
  out.reserve(points.size());
  std::vector<T> buf;
  for (const auto& lambda : points) {
    require_lambda<T>(p.size(), lambda.size());
    out.push_back(fold_multilinear<T>(p.coefficients(), lambda, buf));
  }
  return out;
}

template <Field T>
T eval_gen_charpoly_minor_form(const GenCharPoly<T>& p, VectorView<T> lambda) {
  const unsigned n = p.size();
  require_lambda<T>(n, lambda.size());
  std::vector<T> inverse;
  inverse.reserve(n);
  T product(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(lambda[k]))
      throw DomainError("minor form needs every lambda_k nonzero (lambda_" + std::to_string(k + 1) +
                        " = 0); use the cofactor form");
    inverse.push_back(T(1) / lambda[k]);
    product *= lambda[k];
  }
  // M^alpha_alpha(C) is the coefficient stored at the complement of alpha.
  const std::uint64_t full = SubsetIndex::full_mask(n);
  std::vector<T> minors(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < minors.size(); ++mask) minors[mask] = p.coeff(full ^ mask);
  return product * fold_multilinear<T>(minors, inverse);
}

template <Field T>
T eval_gen_charpoly_minor_form(const Matrix<T>& c, VectorView<T> lambda, SubsetCap cap) {
  require_square(c);
  const auto n = static_cast<unsigned>(c.rows());
  cap.check(n, mode_of_v<T>);
  require_lambda<T>(n, lambda.size());
  T product(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(lambda[k]))
      throw DomainError("minor form needs every lambda_k nonzero (lambda_" + std::to_string(k + 1) +
                        " = 0); use the cofactor form");
    product *= lambda[k];
  }
  T sum(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const SubsetIndex alpha(mask, n);
    if (alpha.is_empty()) {
      sum += T(1);
      continue;
    }
    T lambda_alpha(1);
    for (std::size_t pos : alpha.positions()) lambda_alpha *= lambda[pos];
    sum += minor(c, alpha, alpha) / lambda_alpha;
  }
  return product * sum;
}

#define GENCHAR_INSTANTIATE(T)                                                                  \
  template class GenCharPoly<T>;                                                               \
  template CharPolyCoeffs<T> char_coeffs_faddeev(const Matrix<T>&);                            \
  template T char_coeff_trace_det(const Matrix<T>&, std::size_t);                              \
  template T char_coeff_minor_sum(const Matrix<T>&, std::size_t);                              \
  template CharPolyCoeffs<T> char_coeffs_trace_det(const Matrix<T>&);                          \
  template CharPolyCoeffs<T> char_coeffs_minor_sum(const Matrix<T>&);                          \
  template GenCharPoly<T> gen_charpoly(const Matrix<T>&, SubsetCap);                           \
  template T eval_gen_charpoly<T>(const GenCharPoly<T>&, VectorView<T>);                       \
  template std::vector<T> eval_gen_charpoly_grid<T>(const GenCharPoly<T>&, std::span<const Vector<T>>); \
  template T eval_gen_charpoly_minor_form<T>(const GenCharPoly<T>&, VectorView<T>);            \
  template T eval_gen_charpoly_minor_form<T>(const Matrix<T>&, VectorView<T>, SubsetCap);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar
