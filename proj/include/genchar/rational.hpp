#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace genchar {

/// Arbitrary-precision rational number.
///
/// Always held in lowest terms with a positive denominator, so equality of
/// values is equality of representations and `to_string` is canonical.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral U>
  Rational(U v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  /// num/den; throws DomainError when den == 0.
  Rational(const mpz_class& num, const mpz_class& den);

  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Accepts "p", "p/q", and finite decimal literals ("-1.25", "3e-2").
  static Rational parse(std::string_view text);
  static std::optional<Rational> try_parse(std::string_view text);

  /// Canonical "p/q", or "p" when the denominator is 1.
  std::string to_string() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  /// Square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const;

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

}  // namespace genchar
