#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genchar/matrix.hpp"

namespace genchar::cli {

enum class InputFormat { csv, json };

/// One numeric literal as written. CSV cells carry a 1-based line/column;
/// JSON cells carry their path such as "data[1][0]".
struct Cell {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string path;
};

/// A matrix file before scalars are interpreted in a mode.
struct RawMatrix {
  InputFormat format = InputFormat::csv;
  std::vector<std::vector<Cell>> rows;
  std::optional<Mode> mode;  // set by the JSON "mode" field

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// CSV: one row per nonblank line, cells separated by commas.
/// JSON: {"rows": r, "cols": c, "data": [[...], ...], "mode": "exact"|"float"};
/// rows/cols/mode are optional, data entries are numbers or strings such as "1/2".
/// The format is JSON when the first nonblank character is '{'.
RawMatrix parse_matrix_text(std::string_view text);
RawMatrix parse_matrix_file(const std::filesystem::path& path);

/// Interprets every cell in mode T; errors carry the cell position.
template <Field T>
Matrix<T> to_matrix(const RawMatrix& raw);

/// Comma-separated list of scalars, as given to --lambda and friends.
template <Field T>
Vector<T> parse_scalar_list(std::string_view text, std::string_view option);

template <Field T>
std::string serialize_csv(const Matrix<T>& m);

template <Field T>
std::string serialize_json(const Matrix<T>& m);

}  // namespace genchar::cli
