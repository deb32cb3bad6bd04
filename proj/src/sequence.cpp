#include "genchar/sequence.hpp"

#include <cmath>
#include <utility>

namespace genchar {

namespace {

template <Field T>
bool is_integral_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.is_integer() && x.numerator().fits_slong_p();
  } else {
    return std::isfinite(x) && std::trunc(x) == x && std::fabs(x) < 1e15;
  }
}

template <Field T>
long as_long(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.numerator().get_si();
  } else {
    return static_cast<long>(x);
  }
}

template <Field T>
T integer_power(T base, long e) {
  const bool invert = e < 0;
  auto k = static_cast<unsigned long>(invert ? -e : e);
  T acc(1);
  while (k != 0) {
    if (k & 1UL) acc *= base;
    base *= base;
    k >>= 1;
  }
  return invert ? T(1) / acc : acc;
}

}  // namespace

template <Field T>
bool SequenceShape<T>::square_summable() const {
  if (is_zero()) return true;
  const T r = abs_of(ratio);
  if (r < T(1)) return true;
  return r == T(1) && exponent <= -1;
}

template <Field T>
bool SequenceShape<T>::summable() const {
  if (is_zero()) return true;
  const T r = abs_of(ratio);
  if (r < T(1)) return true;
  return r == T(1) && exponent <= -2;
}

std::string_view kind_name(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::explicit_list: return "explicit";
    case SequenceKind::harmonic: return "harmonic";
    case SequenceKind::power: return "power";
    case SequenceKind::custom: return "custom";
  }
  return "unknown";
}

template <Field T>
SequenceSpec<T> SequenceSpec<T>::explicit_values(std::vector<T> values) {
  SequenceSpec s;
  s.kind = SequenceKind::explicit_list;
  s.n_max = values.size();
  s.params = std::move(values);
  return s;
}

template <Field T>
SequenceSpec<T> SequenceSpec<T>::harmonic(T scale, long exponent, std::size_t n_max, std::size_t start) {
  SequenceSpec s;
  s.kind = SequenceKind::harmonic;
  s.params = {std::move(scale), T(exponent)};
  s.n_max = n_max;
  s.start = start;
  return s;
}

template <Field T>
SequenceSpec<T> SequenceSpec<T>::power(T ratio, T scale, std::size_t n_max, std::size_t start) {
  SequenceSpec s;
  s.kind = SequenceKind::power;
  s.params = {std::move(ratio), std::move(scale)};
  s.n_max = n_max;
  s.start = start;
  return s;
}

template <Field T>
SequenceSpec<T> SequenceSpec<T>::custom(std::function<double(std::size_t)> f, std::size_t n_max, std::size_t start)
  requires(!is_exact_v<T>)
{
  SequenceSpec s;
  s.kind = SequenceKind::custom;
  s.closure = std::move(f);
  s.n_max = n_max;
  s.start = start;
  return s;
}

template <Field T>
void SequenceSpec<T>::validate() const {
  if (start < 1) throw ShapeError("sequence start index must be >= 1");
  switch (kind) {
    case SequenceKind::explicit_list:
      if (start - 1 + n_max > params.size())
        throw ShapeError("explicit sequence has " + std::to_string(params.size()) + " values, fewer than requested");
      break;
    case SequenceKind::harmonic:
      if (params.size() > 2) throw ShapeError("harmonic takes at most [scale, exponent]");
      if (params.size() == 2 && !is_integral_value(params[1]))
        throw DomainError("harmonic exponent must be an integer");
      break;
    case SequenceKind::power:
      if (params.empty() || params.size() > 2) throw ShapeError("power takes [ratio] or [ratio, scale]");
      break;
    case SequenceKind::custom:
      if (is_exact_v<T>) throw DomainError("custom sequences run in float mode only");
      if (!closure) throw ShapeError("custom sequence without a closure");
      break;
  }
}

template <Field T>
T SequenceSpec<T>::at(std::size_t j) const {
  if (j < 1) throw ShapeError("sequence terms are 1-based");
  const std::size_t k = start + j - 1;
  switch (kind) {
    case SequenceKind::explicit_list:
      if (k > params.size()) throw ShapeError("explicit sequence exhausted at index " + std::to_string(k));
      return params[k - 1];
    case SequenceKind::harmonic: {
      const T scale = params.empty() ? T(1) : params[0];
      const long e = params.size() < 2 ? 1 : as_long(params[1]);
      return scale / integer_power(T(k), e);
    }
    case SequenceKind::power: {
      const T scale = params.size() < 2 ? T(1) : params[1];
      return scale * integer_power(params[0], static_cast<long>(k));
    }
    case SequenceKind::custom:
      if constexpr (is_exact_v<T>) {
        throw DomainError("custom sequences run in float mode only");
      } else {
        return closure(k);
      }
  }
  throw ShapeError("unknown sequence kind");
}

template <Field T>
Vector<T> SequenceSpec<T>::generate(std::size_t count) const {
  validate();
  if (count > n_max)
    throw ShapeError("requested " + std::to_string(count) + " terms from a sequence of at most " +
                     std::to_string(n_max));
  Vector<T> out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(at(j));
  return out;
}

template <Field T>
std::optional<SequenceShape<T>> SequenceSpec<T>::shape() const {
  switch (kind) {
    case SequenceKind::harmonic: {
      const T scale = params.empty() ? T(1) : params[0];
      const long e = params.size() < 2 ? 1 : as_long(params[1]);
      return SequenceShape<T>{scale, -e, T(1)};
    }
    case SequenceKind::power:
      return SequenceShape<T>{params.size() < 2 ? T(1) : params[1], 0, params[0]};
    default:
      return std::nullopt;
  }
}

template struct SequenceShape<Rational>;
template struct SequenceShape<double>;
template struct SequenceSpec<Rational>;
template struct SequenceSpec<double>;

}  // namespace genchar
