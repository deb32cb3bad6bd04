#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "genchar/matrix.hpp"
#include "genchar/sequence.hpp"

namespace genchar {

template <Field T>
struct ConstrainedMinimum {
  T value;
  Vector<T> minimizer;
};

/// min sum a_k x_k^2 subject to sum x_k = 1; the value is (sum 1/a_k)^{-1}.
template <Field T>
ConstrainedMinimum<T> min_weighted_sum(VectorView<T> a);

/// min sum a_k x_k^2 subject to sum x_k b_k = 1; the value is (sum b_k^2/a_k)^{-1},
/// reached at x_k = (b_k/a_k) (sum b_j^2/a_j)^{-1}.
template <Field T>
ConstrainedMinimum<T> min_weighted_sum_b(VectorView<T> a, VectorView<T> b);

/// min (Ax, x) subject to (x, b) = 1 for symmetric positive definite A; the value
/// is 1/(A^{-1}b, b) at x = A^{-1}b / (A^{-1}b, b).
///
/// Definiteness is read off the pivots of unpivoted symmetric elimination:
/// every pivot must be > 0 (exact) or > 1e-10 max|A| (float).
template <Field T>
ConstrainedMinimum<T> min_quadratic_constrained(const Matrix<T>& a, VectorView<T> b);

/// True when A is symmetric and every elimination pivot passes the test above.
template <Field T>
bool is_positive_definite(const Matrix<T>& a);

enum class Verdict { diverging, bounded, inconclusive };

std::string_view verdict_name(Verdict v);

/// Truncation diagnostics. values[n-1] belongs to the truncation to n
/// coordinates; an empty entry marks a truncation where the ratio is undefined.
///
/// verdict = bounded when the sequence kinds certify a finite supremum;
/// otherwise diverging when the defined values are nondecreasing and the last
/// one exceeds the threshold; otherwise inconclusive.
template <Field T>
struct DivergenceReport {
  std::vector<std::optional<T>> values;
  bool monotone_nondecreasing = true;
  T threshold;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::size_t> crossing_index;  // first n with value > threshold
  bool certified_bounded = false;
};

template <Field T>
inline const T default_divergence_threshold = T(1000000);

/// values[n] = sum_{k <= n} b_k^2 / lambda_k, the quadratic form (A_n^{-1} b_n, b_n)
/// of the diagonal truncation A_n = diag(lambda_1..lambda_n).
template <Field T>
DivergenceReport<T> truncated_quadform_sequence(const SequenceSpec<T>& lambda, const SequenceSpec<T>& b,
                                                std::size_t n, const T& threshold = default_divergence_threshold<T>);

/// values[n] = Gram(f_0..f_m) / Gram(f_0..^f_s..f_m) on truncations; a vanishing
/// denominator leaves that entry empty.
template <Field T>
DivergenceReport<T> gram_ratio_sequence(std::span<const SequenceSpec<T>> rows, std::size_t omit, std::size_t n,
                                        const T& threshold = default_divergence_threshold<T>);

/// values[n] = det(I + gram(f_0..f_m)) / det(I + gram(f_0..^f_s..f_m)) on truncations.
template <Field T>
DivergenceReport<T> det_ratio_sequence(std::span<const SequenceSpec<T>> rows, std::size_t omit, std::size_t n,
                                       const T& threshold = default_divergence_threshold<T>);

template <Field T>
struct OnesDistance {
  T closed_form;  // (1 + sum 1/a_k^2)^{-1}
  T gram_ratio;   // det(ones + diag(0, a^2)) / det(ones + diag(a^2))
};

/// Squared distance from f_0 to span(f_k) when gram(f_0, f_k..) is the all-ones
/// matrix plus diag(0, a_k^2, ...), over a window of `window` consecutive a_k.
template <Field T>
OnesDistance<T> ones_plus_diag_distance(const SequenceSpec<T>& a, std::size_t window);

}  // namespace genchar
