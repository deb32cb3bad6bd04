#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "genchar/matrix.hpp"

namespace genchar {

enum class SequenceKind { explicit_list, harmonic, power, custom };

/// Closed-form term scale * k^exponent * ratio^k, k the absolute index.
/// Products and quotients of such terms stay in the family, which makes
/// l2-membership and summability decidable.
template <Field T>
struct SequenceShape {
  T scale;
  long exponent = 0;
  T ratio = T(1);

  bool is_zero() const { return genchar::is_zero(scale); }
  /// sum_k |term_k|^2 < infinity.
  bool square_summable() const;
  /// sum_k |term_k| < infinity.
  bool summable() const;

  friend SequenceShape operator*(const SequenceShape& x, const SequenceShape& y) {
    return {x.scale * y.scale, x.exponent + y.exponent, x.ratio * y.ratio};
  }
  friend SequenceShape operator/(const SequenceShape& x, const SequenceShape& y) {
    return {x.scale / y.scale, x.exponent - y.exponent, x.ratio / y.ratio};
  }
};

/// Deterministic generator of a real sequence; term j of a truncation is the
/// value at absolute index k = start + j - 1.
///
/// - explicit_list: params are the values (params[k-1] at index k).
/// - harmonic: params [scale = 1, exponent = 1]; value scale / k^exponent.
/// - power: params [ratio, scale = 1]; value scale * ratio^k.
/// - custom: float-only closure of k.
template <Field T>
struct SequenceSpec {
  SequenceKind kind = SequenceKind::explicit_list;
  std::vector<T> params;
  std::size_t n_max = 0;
  std::size_t start = 1;
  std::function<double(std::size_t)> closure;
  /// Caller's claim that the infinite sequence is not in l2. Only used to label
  /// tests and reports, never in any computation.
  bool asserted_not_in_l2 = false;

  static SequenceSpec explicit_values(std::vector<T> values);
  static SequenceSpec harmonic(T scale, long exponent, std::size_t n_max, std::size_t start = 1);
  static SequenceSpec power(T ratio, T scale, std::size_t n_max, std::size_t start = 1);
  static SequenceSpec custom(std::function<double(std::size_t)> f, std::size_t n_max, std::size_t start = 1)
    requires(!is_exact_v<T>);

  /// Throws ShapeError/DomainError for malformed parameters.
  void validate() const;

  /// Term j (1-based) of the truncation.
  T at(std::size_t j) const;
  /// First `count` terms; throws ShapeError when count > n_max.
  Vector<T> generate(std::size_t count) const;

  /// Closed form when the kind has one (harmonic with integral exponent, power).
  std::optional<SequenceShape<T>> shape() const;
};

std::string_view kind_name(SequenceKind kind);

}  // namespace genchar
