#include "genchar/cli/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "genchar/cli/json.hpp"

namespace genchar::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_rectangular(const RawMatrix& raw) {
  if (raw.rows.empty()) throw ShapeError("matrix file contains no rows");
  const std::size_t cols = raw.rows.front().size();
  for (std::size_t i = 0; i < raw.rows.size(); ++i)
    if (raw.rows[i].size() != cols)
      throw ShapeError("ragged matrix: row " + std::to_string(i + 1) + " has " + std::to_string(raw.rows[i].size()) +
                       " entries, row 1 has " + std::to_string(cols));
}

RawMatrix parse_csv(std::string_view text) {
  RawMatrix raw;
  raw.format = InputFormat::csv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;

    std::vector<Cell> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string_view field = line.substr(pos, comma == std::string_view::npos ? line.size() - pos : comma - pos);
      std::size_t lead = 0;
      while (lead < field.size() && std::isspace(static_cast<unsigned char>(field[lead]))) ++lead;
      const std::string_view value = trim(field);
      const std::size_t column = pos + lead + 1;
      if (value.empty()) throw ParseError("empty field", line_no, column);
      row.push_back({std::string(value), line_no, column, {}});
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    raw.rows.push_back(std::move(row));
  }
  require_rectangular(raw);
  return raw;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Streams the document without materializing a DOM, so float lexemes reach
// the exact parser untouched.
class MatrixSax : public nlohmann::json_sax<Json> {
 public:
  explicit MatrixSax(std::string_view text) : text_(text) {}

  bool null() override { return scalar_error("null"); }
  bool boolean(bool) override { return scalar_error("boolean"); }
  bool number_integer(number_integer_t v) override { return number(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return number(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return number(s); }
  bool binary(binary_t&) override { return scalar_error("binary"); }

  bool string(string_t& s) override {
    if (depth_ == 1 && key_ == "mode") {
      try {
        raw_.mode = parse_mode(s);
      } catch (const UsageError&) {
        throw ParseError("field \"mode\" must be \"exact\" or \"float\", got \"" + s + "\"");
      }
      return true;
    }
    if (in_data_row()) return cell(s);
    throw ParseError("unexpected string \"" + s + "\"" + where());
  }

  bool start_object(std::size_t) override {
    if (depth_ != 0) throw ParseError("unexpected object" + where());
    ++depth_;
    return true;
  }

  bool key(string_t& k) override {
    if (k != "rows" && k != "cols" && k != "data" && k != "mode") throw ParseError("unknown field \"" + k + "\"");
    if (!seen_.insert(k).second) throw ParseError("duplicate field \"" + k + "\"");
    key_ = k;
    return true;
  }

  bool end_object() override {
    --depth_;
    return true;
  }

  bool start_array(std::size_t) override {
    if (depth_ == 1 && key_ == "data") {
      depth_ = 2;
    } else if (depth_ == 2) {
      depth_ = 3;
      raw_.rows.emplace_back();
    } else {
      throw ParseError("unexpected array" + where());
    }
    return true;
  }

  bool end_array() override {
    --depth_;
    return true;
  }

  bool parse_error(std::size_t position, const std::string& last_token, const nlohmann::detail::exception&) override {
    const auto [line, column] = line_column(text_, position == 0 ? 0 : position - 1);
    throw ParseError("malformed JSON near '" + last_token + "'", line, column);
  }

  RawMatrix finish() {
    if (!seen_.count("data")) throw ParseError("missing field \"data\"");
    if (raw_.rows.empty()) throw ShapeError("matrix file contains no rows");
    require_rectangular(raw_);
    if (rows_ && *rows_ != raw_.rows.size())
      throw ShapeError("field \"rows\" is " + std::to_string(*rows_) + " but data has " +
                       std::to_string(raw_.rows.size()) + " rows");
    if (cols_ && *cols_ != raw_.rows.front().size())
      throw ShapeError("field \"cols\" is " + std::to_string(*cols_) + " but data has " +
                       std::to_string(raw_.rows.front().size()) + " columns");
    return std::move(raw_);
  }

 private:
  bool in_data_row() const { return depth_ == 3; }

  std::string where() const { return key_.empty() ? std::string() : " in field \"" + key_ + "\""; }

  bool number(const std::string& lexeme) {
    if (depth_ == 1 && (key_ == "rows" || key_ == "cols")) {
      if (lexeme.empty() || lexeme.front() == '-' || lexeme.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("field \"" + key_ + "\" must be a nonnegative integer");
      (key_ == "rows" ? rows_ : cols_) = std::stoull(lexeme);
      return true;
    }
    if (in_data_row()) return cell(lexeme);
    throw ParseError("unexpected number " + lexeme + where());
  }

  bool cell(const std::string& text) {
    auto& row = raw_.rows.back();
    row.push_back({text, 0, 0,
                   "data[" + std::to_string(raw_.rows.size() - 1) + "][" + std::to_string(row.size()) + "]"});
    return true;
  }

  bool scalar_error(const char* kind) { throw ParseError(std::string("unexpected ") + kind + where()); }

  std::string_view text_;
  RawMatrix raw_{InputFormat::json, {}, std::nullopt};
  int depth_ = 0;
  std::string key_;
  std::set<std::string> seen_;
  std::optional<std::size_t> rows_, cols_;
};

RawMatrix parse_json(std::string_view text) {
  MatrixSax sax(text);
  Json::sax_parse(text, &sax);
  return sax.finish();
}

}  // namespace

RawMatrix parse_matrix_text(std::string_view text) {
  const std::string_view content = trim(text);
  if (!content.empty() && content.front() == '{') return parse_json(text);
  return parse_csv(text);
}

RawMatrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

template <Field T>
Matrix<T> to_matrix(const RawMatrix& raw) {
  require_rectangular(raw);
  Matrix<T> m(raw.row_count(), raw.col_count());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Cell& cell = raw.rows[i][j];
      try {
        m(i, j) = parse_scalar<T>(cell.text);
      } catch (const Error&) {
        const std::string msg = "invalid " + std::string(mode_name(mode_of_v<T>)) + " scalar '" + cell.text + "'";
        if (cell.line != 0) throw ParseError(msg, cell.line, cell.column);
        throw ParseError(cell.path + ": " + msg);
      }
    }
  return m;
}

template <Field T>
Vector<T> parse_scalar_list(std::string_view text, std::string_view option) {
  Vector<T> out;
  if (trim(text).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos));
    try {
      out.push_back(parse_scalar<T>(item));
    } catch (const Error&) {
      throw ParseError("--" + std::string(option) + ": invalid scalar '" + std::string(item) + "' at position " +
                       std::to_string(out.size() + 1));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <Field T>
std::string serialize_csv(const Matrix<T>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) out += ',';
      out += to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

template <Field T>
std::string serialize_json(const Matrix<T>& m) {
  Json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["mode"] = std::string(mode_name(mode_of_v<T>));
  doc["data"] = matrix_json(m);
  return doc.dump() + "\n";
}

#define GENCHAR_INSTANTIATE(T)                                                 \
  template Matrix<T> to_matrix<T>(const RawMatrix&);                          \
  template Vector<T> parse_scalar_list<T>(std::string_view, std::string_view); \
  template std::string serialize_csv(const Matrix<T>&);                       \
  template std::string serialize_json(const Matrix<T>&);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar::cli
