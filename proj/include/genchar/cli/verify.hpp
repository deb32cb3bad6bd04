#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genchar/charpoly.hpp"
#include "genchar/cli/json.hpp"

namespace genchar::cli {

enum class CheckStatus { passed, failed, skipped };

struct IdentityCheck {
  std::string name;
  CheckStatus status = CheckStatus::passed;
  std::string detail;  // offending subset / index on failure, reason when skipped
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  /// First failed check, in execution order.
  const IdentityCheck* first_failure() const;
  Json to_json() const;
};

/// Every cross-identity of the library on the square matrix C. Exact mode
/// compares bit-exactly, float mode to relative 1e-9.
template <Field T>
VerifyReport run_verify(const Matrix<T>& c, const Vector<T>& lambda, const Vector<T>& a, std::uint64_t seed,
                        SubsetCap cap = {});

}  // namespace genchar::cli
