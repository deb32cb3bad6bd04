#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genchar/charpoly.hpp"
#include "genchar/cli/json.hpp"

namespace genchar::cli {

struct BenchConfig {
  unsigned n_min = 2;
  unsigned n_max = 10;
  std::size_t grid = 100;
  std::uint64_t seed = 1;
  SubsetCap cap;
  /// Each timed round repeats until it has run at least this long; the
  /// fastest of `rounds` rounds is reported.
  double min_loop_ms = 5.0;
  unsigned rounds = 5;
};

/// One matrix size: P_C evaluated on `grid` points through the stored subset
/// coefficients versus det(C + diag(lambda)) recomputed at every point.
struct BenchRow {
  unsigned n = 0;
  std::size_t grid = 0;
  double expansion_ms = 0.0;       // one-time gen_charpoly cost
  double subset_eval_us = 0.0;     // per grid point
  double direct_eval_us = 0.0;     // per grid point
  double max_rel_diff = 0.0;       // float: worst disagreement; exact: 0 or 1
  std::optional<double> break_even_points;  // grid size where expansion pays for itself

  double speedup() const { return subset_eval_us > 0 ? direct_eval_us / subset_eval_us : 0.0; }
  bool subset_faster() const { return subset_eval_us < direct_eval_us; }
};

struct BenchReport {
  Mode mode = Mode::floating;
  BenchConfig config;
  std::vector<BenchRow> rows;

  std::string table() const;
  Json to_json() const;
};

template <Field T>
BenchReport run_bench(const BenchConfig& config);

}  // namespace genchar::cli
