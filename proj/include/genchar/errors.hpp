#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace genchar {

/// Coarse classification used to map library failures onto process exit codes.
enum class ErrorClass { usage, parse, shape, domain, capacity };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}

  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

/// Operand dimensions do not fit the operation (ragged input, out-of-range mask, non-square).
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorClass::shape, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(ErrorClass::parse, format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

/// A determinant that must be nonzero vanished (exactly, or below the float guard).
class SingularError : public DomainError {
 public:
  SingularError(const std::string& what, std::string value)
      : DomainError(what + " (value " + value + ")"), value_(std::move(value)) {}

  /// The offending determinant / polynomial value, serialized.
  const std::string& value() const noexcept { return value_; }

 private:
  std::string value_;
};

class DegenerateBasisError : public DomainError {
 public:
  explicit DegenerateBasisError(const std::string& what) : DomainError(what) {}
};

class DefinitenessError : public DomainError {
 public:
  explicit DefinitenessError(const std::string& what) : DomainError(what) {}
};

class InfeasibleError : public DomainError {
 public:
  explicit InfeasibleError(const std::string& what) : DomainError(what) {}
};

/// Subset enumeration would exceed the configured size cap.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorClass::capacity, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorClass::usage, what) {}
};

}  // namespace genchar
