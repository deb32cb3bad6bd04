#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "genchar/rational.hpp"

namespace genchar {

/// Arithmetic mode of a computation. A computation is instantiated for one
/// scalar type, so modes can never mix inside it.
enum class Mode { exact, floating };

template <class T>
concept Field = std::same_as<T, Rational> || std::same_as<T, double>;

template <Field T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <Field T>
inline constexpr Mode mode_of_v = is_exact_v<T> ? Mode::exact : Mode::floating;

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

inline Rational abs_of(const Rational& x) { return x.abs(); }
inline double abs_of(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& x) { return x.to_string(); }
/// Shortest decimal that round-trips to the same binary64 value.
std::string to_string(double x);

/// Parses a literal into the scalar field T; throws ParseError.
template <Field T>
T parse_scalar(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);

/// Relative closeness `|x - y| <= tol * max(1, |x|, |y|)`; exact equality for Rational.
template <Field T>
bool nearly_equal(const T& x, const T& y, double tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return x == y;
  } else {
    const double scale = std::fmax(1.0, std::fmax(std::fabs(x), std::fabs(y)));
    return std::fabs(x - y) <= tol * scale;
  }
}

}  // namespace genchar
