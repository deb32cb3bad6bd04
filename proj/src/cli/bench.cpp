#include "genchar/cli/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "genchar/linalg.hpp"

namespace genchar::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Best of `rounds` measurements, each repeating `pass` until min_ms has
// elapsed; returns milliseconds per pass.
template <class F>
double time_passes(double min_ms, unsigned rounds, F&& pass) {
  double best = 0.0;
  for (unsigned r = 0; r < rounds; ++r) {
    std::size_t passes = 0;
    const auto start = Clock::now();
    double total = 0.0;
    do {
      pass();
      ++passes;
      total = elapsed_ms(start);
    } while (total < min_ms);
    const double per_pass = total / static_cast<double>(passes);
    if (r == 0 || per_pass < best) best = per_pass;
  }
  return best;
}

template <Field T>
double discrepancy(const T& x, const T& y) {
  if constexpr (is_exact_v<T>) {
    return x == y ? 0.0 : 1.0;
  } else {
    return std::fabs(x - y) / std::max({1.0, std::fabs(x), std::fabs(y)});
  }
}

}  // namespace

template <Field T>
BenchReport run_bench(const BenchConfig& config) {
  if (config.n_min < 1 || config.n_min > config.n_max) throw UsageError("bench needs 1 <= n_min <= n_max");
  if (config.grid == 0) throw UsageError("bench needs a nonempty lambda grid");
  config.cap.check(config.n_max, mode_of_v<T>);

  BenchReport report;
  report.mode = mode_of_v<T>;
  report.config = config;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<long> entry(-9, 9);

  for (unsigned n = config.n_min; n <= config.n_max; ++n) {
    Matrix<T> c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = T(entry(rng));
    std::vector<Vector<T>> grid(config.grid, Vector<T>(n));
    for (auto& point : grid)
      for (auto& x : point) x = T(entry(rng));

    BenchRow row;
    row.n = n;
    row.grid = config.grid;

    const auto start = Clock::now();
    const GenCharPoly<T> p = gen_charpoly(c, config.cap);
    row.expansion_ms = elapsed_ms(start);

    std::vector<T> via_subsets, via_direct(grid.size());
    const double subset_ms = time_passes(config.min_loop_ms, config.rounds, [&] {
      via_subsets = eval_gen_charpoly_grid<T>(p, grid);
    });
    const double direct_ms = time_passes(config.min_loop_ms, config.rounds, [&] {
      for (std::size_t g = 0; g < grid.size(); ++g) via_direct[g] = determinant(add_diagonal(c, grid[g]));
    });
    const double points = static_cast<double>(grid.size());
    row.subset_eval_us = subset_ms * 1000.0 / points;
    row.direct_eval_us = direct_ms * 1000.0 / points;
    for (std::size_t g = 0; g < grid.size(); ++g)
      row.max_rel_diff = std::max(row.max_rel_diff, discrepancy(via_subsets[g], via_direct[g]));
    const double saved_us = row.direct_eval_us - row.subset_eval_us;
    if (saved_us > 0) row.break_even_points = row.expansion_ms * 1000.0 / saved_us;
    report.rows.push_back(row);
  }
  return report;
}

std::string BenchReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%3s %6s %14s %14s %14s %9s %12s %12s\n", "n", "grid", "expansion_ms",
                "subset_us/pt", "direct_us/pt", "speedup", "break_even", "max_rel_diff");
  out += line;
  for (const auto& r : rows) {
    char be[32];
    if (r.break_even_points)
      std::snprintf(be, sizeof be, "%.0f", std::ceil(*r.break_even_points));
    else
      std::snprintf(be, sizeof be, "never");
    std::snprintf(line, sizeof line, "%3u %6zu %14.4f %14.4f %14.4f %9.2f %12s %12.3g\n", r.n, r.grid,
                  r.expansion_ms, r.subset_eval_us, r.direct_eval_us, r.speedup(), be, r.max_rel_diff);
    out += line;
  }
  return out;
}

Json BenchReport::to_json() const {
  Json rows_json = Json::array();
  for (const auto& r : rows) {
    Json row{{"n", r.n},
             {"grid", r.grid},
             {"expansion_ms", r.expansion_ms},
             {"subset_eval_us", r.subset_eval_us},
             {"direct_eval_us", r.direct_eval_us},
             {"speedup", r.speedup()},
             {"subset_faster", r.subset_faster()},
             {"max_rel_diff", r.max_rel_diff}};
    row["break_even_points"] = r.break_even_points ? Json(*r.break_even_points) : Json(nullptr);
    rows_json.push_back(std::move(row));
  }
  return Json{{"mode", std::string(mode_name(mode))},
              {"n_min", config.n_min},
              {"n_max", config.n_max},
              {"grid", config.grid},
              {"seed", config.seed},
              {"rows", std::move(rows_json)}};
}

template BenchReport run_bench<Rational>(const BenchConfig&);
template BenchReport run_bench<double>(const BenchConfig&);

}  // namespace genchar::cli
