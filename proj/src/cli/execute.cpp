#include <charconv>
#include <chrono>
#include <random>

#include "genchar/charpoly.hpp"
#include "genchar/cli/bench.hpp"
#include "genchar/cli/command.hpp"
#include "genchar/cli/io.hpp"
#include "genchar/cli/verify.hpp"
#include "genchar/gram.hpp"
#include "genchar/linalg.hpp"
#include "genchar/optimize.hpp"
#include "genchar/resolvent.hpp"
#include "genchar/sequence.hpp"

namespace genchar::cli {

namespace {

constexpr double agreement_tol = 1e-9;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) return parts;
    begin = end + 1;
  }
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view option) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw UsageError("--" + std::string(option) + " expects a nonnegative integer, got '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError(std::string(what) + " expects a nonnegative integer, got '" + std::string(text) + "'");
  return value;
}

long parse_long(std::string_view text, std::string_view what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError(std::string(what) + " expects an integer, got '" + std::string(text) + "'");
  return value;
}

std::string require(const CommandRequest& req, const std::string& key) {
  auto value = req.get(key);
  if (!value) throw UsageError("'" + std::string(command_name(req.command)) + "' requires --" + key);
  return *value;
}

/// kind:params:N[:start], params comma-separated (possibly empty).
template <Field T>
SequenceSpec<T> parse_spec(std::string_view text) {
  const auto fields = split(text, ':');
  if (fields.size() < 3 || fields.size() > 4)
    throw ParseError("sequence spec '" + std::string(text) + "' is not kind:params:N[:start]");
  const std::string_view kind = fields[0];
  std::vector<T> params;
  if (!fields[1].empty())
    for (const auto part : split(fields[1], ',')) params.push_back(parse_scalar<T>(part));
  const std::size_t n_max = parse_count(fields[2], "sequence length");
  const std::size_t start = fields.size() == 4 ? parse_count(fields[3], "sequence start") : 1;

  SequenceSpec<T> spec;
  if (kind == "explicit") {
    spec = SequenceSpec<T>::explicit_values(std::move(params));
    spec.n_max = n_max;
    spec.start = start;
  } else if (kind == "harmonic") {
    if (params.size() > 2) throw ShapeError("harmonic takes at most scale,exponent");
    const T scale = params.empty() ? T(1) : params[0];
    const long exponent = params.size() < 2 ? 1 : parse_long(split(fields[1], ',')[1], "harmonic exponent");
    spec = SequenceSpec<T>::harmonic(scale, exponent, n_max, start);
  } else if (kind == "power") {
    if (params.empty() || params.size() > 2) throw ShapeError("power takes ratio[,scale]");
    spec = SequenceSpec<T>::power(params[0], params.size() == 2 ? params[1] : T(1), n_max, start);
  } else {
    throw UsageError("unknown sequence kind '" + std::string(kind) + "' (expected explicit, harmonic or power)");
  }
  spec.validate();
  return spec;
}

Json optional_index(const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); }

template <Field T>
Json divergence_json(const DivergenceReport<T>& r) {
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(v ? scalar_json(*v) : Json(nullptr));
  return Json{{"values", std::move(values)},
              {"monotone_nondecreasing", r.monotone_nondecreasing},
              {"threshold", scalar_json(r.threshold)},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"crossing_index", optional_index(r.crossing_index)},
              {"certified_bounded", r.certified_bounded}};
}

template <Field T>
Vector<T> seeded_vector(std::mt19937_64& rng, std::size_t n, bool nonzero) {
  std::uniform_int_distribution<long> dist(-5, 5);
  Vector<T> v(n);
  for (auto& x : v) {
    long k = dist(rng);
    while (nonzero && k == 0) k = dist(rng);
    x = T(k);
  }
  return v;
}

class Runner {
 public:
  Runner(const CommandRequest& req, std::optional<RawMatrix> raw) : req_(req), raw_(std::move(raw)) {
    if (auto cap = req.get("cap")) cap_.limit = static_cast<unsigned>(parse_unsigned(*cap, "cap"));
  }

  template <Field T>
  ResultDocument run() {
    ResultDocument doc;
    doc.payload = dispatch<T>(doc);
    return doc;
  }

 private:
  template <Field T>
  Matrix<T> input() const {
    if (!raw_) throw UsageError("'" + std::string(command_name(req_.command)) + "' requires --input");
    return to_matrix<T>(*raw_);
  }

  template <Field T>
  Matrix<T> square_input() const {
    Matrix<T> c = input<T>();
    if (!c.is_square())
      throw ShapeError("expected a square matrix, got " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
    return c;
  }

  template <Field T>
  Vector<T> list(const std::string& key, std::size_t expected) const {
    Vector<T> v = parse_scalar_list<T>(require(req_, key), key);
    if (expected != 0 && v.size() != expected)
      throw ShapeError("--" + key + " has " + std::to_string(v.size()) + " entries, expected " +
                       std::to_string(expected));
    return v;
  }

  template <Field T>
  std::vector<SequenceSpec<T>> specs(std::size_t min_count) const {
    if (req_.specs.size() < min_count)
      throw UsageError("'" + std::string(command_name(req_.command)) + "' needs at least " +
                       std::to_string(min_count) + " --spec");
    std::vector<SequenceSpec<T>> out;
    for (const auto& s : req_.specs) out.push_back(parse_spec<T>(s));
    return out;
  }

  template <Field T>
  Json dispatch(ResultDocument& doc) {
    switch (req_.command) {
      case Command::charpoly: return charpoly<T>();
      case Command::genpoly: return genpoly<T>();
      case Command::geneval: return geneval<T>();
      case Command::resolvent: return resolvent<T>();
      case Command::quadform: return quadform<T>();
      case Command::gramdist: return gramdist<T>();
      case Command::delta: return delta<T>();
      case Command::minimize: return minimize<T>();
      case Command::diverge: return diverge<T>();
      case Command::onesdist: return onesdist<T>();
      case Command::bench: return bench<T>(doc);
      case Command::verify: return verify<T>(doc);
    }
    throw UsageError("unhandled command");
  }

  template <Field T>
  Json charpoly() const {
    const Matrix<T> c = square_input<T>();
    const auto faddeev = char_coeffs_faddeev(c);
    const auto traces = char_coeffs_trace_det(c);
    const auto minors = char_coeffs_minor_sum(c);
    bool agree = true;
    for (std::size_t k = 0; k < faddeev.c.size(); ++k)
      agree = agree && nearly_equal(faddeev.c[k], traces.c[k], agreement_tol) &&
              nearly_equal(faddeev.c[k], minors.c[k], agreement_tol);
    return Json{{"n", c.rows()}, {"coefficients", vector_json<T>(faddeev.c)}, {"routes_agree", agree}};
  }

  template <Field T>
  Json genpoly() const {
    const Matrix<T> c = square_input<T>();
    const GenCharPoly<T> p = gen_charpoly(c, cap_);
    Json coeffs = Json::object();
    for (std::uint64_t mask = 0; mask < p.coefficients().size(); ++mask)
      coeffs[std::to_string(mask)] = scalar_json(p.coeff(mask));
    return Json{{"n", p.size()}, {"coefficients", std::move(coeffs)}};
  }

  template <Field T>
  Json geneval() const {
    const Matrix<T> c = square_input<T>();
    const Vector<T> lambda = list<T>("lambda", c.rows());
    const GenCharPoly<T> p = gen_charpoly(c, cap_);
    bool any_zero = false;
    for (const T& x : lambda) any_zero = any_zero || is_zero(x);
    return Json{{"value", scalar_json(eval_gen_charpoly(p, lambda))},
                {"minor_form", any_zero ? Json(nullptr) : scalar_json(eval_gen_charpoly_minor_form(p, lambda))},
                {"direct", scalar_json(determinant(add_diagonal(c, lambda)))}};
  }

  template <Field T>
  Json resolvent() const {
    const Matrix<T> c = square_input<T>();
    if (req_.has("lambda") == req_.has("t")) throw UsageError("'resolvent' takes exactly one of --lambda and --t");
    if (req_.has("t")) {
      const T t = parse_scalar<T>(require(req_, "t"));
      return Json{{"kind", "classical"}, {"t", scalar_json(t)}, {"inverse", matrix_json(classical_resolvent(c, t, cap_))}};
    }
    const Vector<T> lambda = list<T>("lambda", c.rows());
    return Json{{"kind", "generalized"}, {"inverse", matrix_json(eval_gen_resolvent(c, lambda, cap_))}};
  }

  template <Field T>
  Json quadform() const {
    const Matrix<T> c = square_input<T>();
    const Vector<T> lambda = list<T>("lambda", c.rows());
    const Vector<T> a = list<T>("a", c.rows());
    const T value = quad_form_gen(c, lambda, a, cap_);
    return Json{{"value", scalar_json(value)}, {"one_plus", scalar_json(one_plus_quadform(c, lambda, a))}};
  }

  template <Field T>
  Json gramdist() const {
    const Matrix<T> m = input<T>();
    if (m.rows() < 2) throw ShapeError("gramdist needs a target row and at least one basis row");
    SpanProblem<T> p{m.row_vector(0), {}};
    for (std::size_t i = 1; i < m.rows(); ++i) p.basis.push_back(m.row_vector(i));
    const T via_gram = distance_sq_gram(p);
    const SpanSolution<T> via_solve = distance_sq_solve(p);
    return Json{{"distance_sq_gram", scalar_json(via_gram)},
                {"distance_sq_solve", scalar_json(via_solve.distance_sq)},
                {"coefficients", vector_json<T>(via_solve.coefficients)},
                {"agree", nearly_equal(via_gram, via_solve.distance_sq, agreement_tol)}};
  }

  template <Field T>
  Json delta() const {
    const Matrix<T> m = input<T>();
    std::vector<Vector<T>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row_vector(i));
    return Json{{"value", scalar_json(delta_functional<T>(rows))}};
  }

  template <Field T>
  Json minimize() const {
    if (raw_) {
      const Matrix<T> a = square_input<T>();
      const Vector<T> b = list<T>("b", a.rows());
      const auto r = min_quadratic_constrained(a, b);
      return Json{{"problem", "quadratic"}, {"value", scalar_json(r.value)}, {"minimizer", vector_json<T>(r.minimizer)}};
    }
    const Vector<T> a = list<T>("a", 0);
    if (req_.has("b")) {
      const Vector<T> b = list<T>("b", a.size());
      const auto r = min_weighted_sum_b<T>(a, b);
      return Json{{"problem", "weighted_b"}, {"value", scalar_json(r.value)}, {"minimizer", vector_json<T>(r.minimizer)}};
    }
    const auto r = min_weighted_sum<T>(a);
    return Json{{"problem", "weighted"}, {"value", scalar_json(r.value)}, {"minimizer", vector_json<T>(r.minimizer)}};
  }

  template <Field T>
  Json diverge() const {
    const std::string kind = req_.get("kind").value_or("quadform");
    if (kind != "quadform" && kind != "gram" && kind != "det")
      throw UsageError("--kind expects quadform, gram or det, got '" + kind + "'");
    const auto seqs = specs<T>(2);
    std::size_t n = seqs.front().n_max;
    for (const auto& s : seqs) n = std::min(n, s.n_max);
    if (auto text = req_.get("N")) n = static_cast<std::size_t>(parse_unsigned(*text, "N"));
    const T threshold = req_.has("threshold") ? parse_scalar<T>(require(req_, "threshold")) : default_divergence_threshold<T>;
    if (kind == "quadform") {
      if (seqs.size() != 2) throw UsageError("diverge --kind quadform takes a lambda spec and a b spec");
      if (req_.has("omit")) throw UsageError("--omit applies to --kind gram and det only");
      return divergence_json(truncated_quadform_sequence(seqs[0], seqs[1], n, threshold));
    }
    const auto omit = static_cast<std::size_t>(parse_unsigned(req_.get("omit").value_or("0"), "omit"));
    if (kind == "gram") return divergence_json(gram_ratio_sequence<T>(seqs, omit, n, threshold));
    return divergence_json(det_ratio_sequence<T>(seqs, omit, n, threshold));
  }

  template <Field T>
  Json onesdist() const {
    const auto seqs = specs<T>(1);
    if (seqs.size() != 1) throw UsageError("'onesdist' takes exactly one --spec");
    std::size_t window = seqs[0].n_max;
    if (auto text = req_.get("N")) window = static_cast<std::size_t>(parse_unsigned(*text, "N"));
    const auto r = ones_plus_diag_distance(seqs[0], window);
    return Json{{"window", window},
                {"closed_form", scalar_json(r.closed_form)},
                {"gram_ratio", scalar_json(r.gram_ratio)},
                {"agree", nearly_equal(r.closed_form, r.gram_ratio, agreement_tol)}};
  }

  template <Field T>
  Json bench(ResultDocument& doc) const {
    BenchConfig config;
    config.cap = cap_;
    if (auto text = req_.get("N")) config.n_max = static_cast<unsigned>(parse_unsigned(*text, "N"));
    if (auto text = req_.get("grid")) config.grid = static_cast<std::size_t>(parse_unsigned(*text, "grid"));
    if (auto text = req_.get("seed")) config.seed = parse_unsigned(*text, "seed");
    config.n_min = std::min(config.n_min, config.n_max);
    const BenchReport report = run_bench<T>(config);
    doc.text = report.table();
    return report.to_json();
  }

  template <Field T>
  Json verify(ResultDocument& doc) const {
    const Matrix<T> c = square_input<T>();
    const std::uint64_t seed = parse_unsigned(req_.get("seed").value_or("1"), "seed");
    std::mt19937_64 rng(seed);
    const Vector<T> lambda = req_.has("lambda") ? list<T>("lambda", c.rows()) : seeded_vector<T>(rng, c.rows(), true);
    const Vector<T> a = req_.has("a") ? list<T>("a", c.rows()) : seeded_vector<T>(rng, c.rows(), false);
    const VerifyReport report = run_verify(c, lambda, a, seed, cap_);
    Json payload = report.to_json();
    payload["lambda"] = vector_json<T>(lambda);
    payload["a"] = vector_json<T>(a);
    if (const auto* f = report.first_failure()) {
      doc.status = verify_failure_exit;
      doc.error = "identity " + f->name + " failed" + (f->detail.empty() ? "" : ": " + f->detail);
    }
    return payload;
  }

  const CommandRequest& req_;
  std::optional<RawMatrix> raw_;
  SubsetCap cap_;
};

}  // namespace

ResultDocument execute(const CommandRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  Mode mode = Mode::exact;
  if (auto m = request.get("mode")) mode = parse_mode(*m);
  ResultDocument doc;
  try {
    std::optional<RawMatrix> raw;
    if (!request.input_path.empty()) raw = parse_matrix_file(request.input_path);
    if (!request.has("mode") && raw && raw->mode) mode = *raw->mode;
    Runner runner(request, std::move(raw));
    doc = mode == Mode::exact ? runner.run<Rational>() : runner.run<double>();
  } catch (const Error& e) {
    doc = ResultDocument{};
    doc.status = exit_code(e.error_class());
    doc.error = e.what();
  }
  doc.command = std::string(command_name(request.command));
  doc.mode = std::string(mode_name(mode));
  doc.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

}  // namespace genchar::cli
