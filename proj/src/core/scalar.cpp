#include "genchar/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>

#include "genchar/errors.hpp"

namespace genchar {

std::string_view mode_name(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view name) {
  if (name == "exact") return Mode::exact;
  if (name == "float") return Mode::floating;
  throw UsageError("unknown mode '" + std::string(name) + "' (expected exact or float)");
}

std::string to_string(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  return Rational::parse(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.find('/') != std::string_view::npos) return Rational::parse(text).to_double();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ParseError("invalid numeric literal '" + std::string(text) + "'");
  return value;
}

}  // namespace genchar
