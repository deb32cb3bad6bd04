#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "genchar/cli/command.hpp"
#include "genchar/cli/io.hpp"
#include "support/oracles.hpp"

using namespace genchar;
using namespace genchar::cli;
using namespace genchar::testing;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".csv") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("genchar_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

ResultDocument run(std::vector<std::string> args, std::optional<std::string> env_cap = {}) {
  args.insert(args.begin(), "genchar");
  const ParsedArguments parsed = parse_arguments(args, env_cap);
  EXPECT_TRUE(parsed.request.has_value());
  return execute(*parsed.request);
}

template <class E>
void expect_usage_error(std::vector<std::string> args) {
  args.insert(args.begin(), "genchar");
  EXPECT_THROW(parse_arguments(args), E);
}

const char* ones3 = "1,1,1\n1,1,1\n1,1,1\n";

}  // namespace

TEST(MatrixFile, CsvRows) {
  const auto m = to_matrix<Rational>(parse_matrix_text("1,2\n3,4"));
  EXPECT_EQ(m, (Matrix<Rational>{{q(1), q(2)}, {q(3), q(4)}}));
  const auto f = to_matrix<double>(parse_matrix_text("1.5, -2\n# comment\n\n3e2,4\n"));
  EXPECT_EQ(f, (Matrix<double>{{1.5, -2.0}, {300.0, 4.0}}));
}

TEST(MatrixFile, JsonRationalHalf) {
  const RawMatrix raw = parse_matrix_text(R"({"data": [["1/2"]], "mode": "exact"})");
  ASSERT_EQ(raw.mode, std::optional<Mode>(Mode::exact));
  EXPECT_EQ(to_matrix<Rational>(raw)(0, 0), q(1, 2));
  const RawMatrix sized = parse_matrix_text(R"({"rows": 2, "cols": 1, "data": [[3], ["-4/6"]]})");
  EXPECT_EQ(to_matrix<Rational>(sized), (Matrix<Rational>{{q(3)}, {q(-2, 3)}}));
}

TEST(MatrixFile, RaggedIsShapeError) {
  EXPECT_THROW(parse_matrix_text("1,2\n3"), ShapeError);
  EXPECT_THROW(parse_matrix_text(R"({"data": [[1, 2], [3]]})"), ShapeError);
  EXPECT_THROW(parse_matrix_text(R"({"rows": 3, "data": [[1], [2]]})"), ShapeError);
}

TEST(MatrixFile, ParseErrorsCarryPosition) {
  try {
    to_matrix<Rational>(parse_matrix_text("1,2\n3,x4\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 3U);
  }
  try {
    parse_matrix_text("1,,2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_EQ(e.column(), 3U);
  }
  try {
    parse_matrix_text("{\n  \"data\": [[1, 2],\n  ]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  EXPECT_THROW(parse_matrix_text(R"({"data": [[1]], "extra": 1})"), ParseError);
  EXPECT_THROW(parse_matrix_text(R"({"data": [[1]], "mode": "fuzzy"})"), ParseError);
  EXPECT_THROW(to_matrix<Rational>(parse_matrix_text("1/0\n")), ParseError);
  EXPECT_THROW(parse_matrix_file("/nonexistent/genchar/input.csv"), UsageError);
}

TEST(MatrixFile, RoundTripNormalizes) {
  EXPECT_EQ(serialize_csv(to_matrix<Rational>(parse_matrix_text("2/4, 3\n-0,-6/4\n"))), "1/2,3\n0,-3/2\n");
  IntSource src(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = static_cast<std::size_t>(src.next(1, 5));
    const auto cols = static_cast<std::size_t>(src.next(1, 5));
    const Matrix<Rational> m = src.rational_matrix(rows, cols);
    EXPECT_EQ(to_matrix<Rational>(parse_matrix_text(serialize_csv(m))), m);
    const RawMatrix raw = parse_matrix_text(serialize_json(m));
    EXPECT_EQ(raw.mode, std::optional<Mode>(Mode::exact));
    EXPECT_EQ(to_matrix<Rational>(raw), m);

    Matrix<double> f(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) f(i, j) = src.real(-1e3, 1e3);
    EXPECT_EQ(to_matrix<double>(parse_matrix_text(serialize_csv(f))), f);
    EXPECT_EQ(to_matrix<double>(parse_matrix_text(serialize_json(f))), f);
  }
}

TEST(Arguments, UnknownCommandOrOption) {
  expect_usage_error<UsageError>({"transmogrify"});
  expect_usage_error<UsageError>({});
  expect_usage_error<UsageError>({"charpoly", "--input", "x.csv", "--bogus", "1"});
  expect_usage_error<UsageError>({"charpoly", "--input", "x.csv", "--lambda", "1"});
  expect_usage_error<UsageError>({"charpoly", "--input", "x.csv", "--mode", "fuzzy"});
  expect_usage_error<UsageError>({"genpoly", "--input", "x.csv", "--spec", "harmonic:1,1:4"});
}

TEST(Arguments, HelpDocumentsMasks) {
  const auto parsed = parse_arguments({"genchar", "--help"});
  EXPECT_FALSE(parsed.request);
  EXPECT_NE(parsed.help.find("bit (k-1)"), std::string::npos);
}

TEST(Arguments, EnvironmentCap) {
  const auto env = parse_arguments({"genchar", "genpoly", "--input", "x.csv"}, std::string("3"));
  EXPECT_EQ(env.request->get("cap"), std::optional<std::string>("3"));
  const auto flag = parse_arguments({"genchar", "genpoly", "--input", "x.csv", "--cap", "5"}, std::string("3"));
  EXPECT_EQ(flag.request->get("cap"), std::optional<std::string>("5"));
  const auto unused = parse_arguments({"genchar", "charpoly", "--input", "x.csv"}, std::string("3"));
  EXPECT_FALSE(unused.request->has("cap"));
}

TEST(ExitCodes, PerErrorClass) {
  EXPECT_EQ(exit_code(ErrorClass::usage), 2);
  EXPECT_EQ(exit_code(ErrorClass::parse), 3);
  EXPECT_EQ(exit_code(ErrorClass::shape), 3);
  EXPECT_EQ(exit_code(ErrorClass::domain), 4);
  EXPECT_EQ(exit_code(ErrorClass::capacity), 5);
}

TEST(Execute, GenpolyAllOnes) {
  const TempFile file(ones3);
  const ResultDocument doc = run({"genpoly", "--input", file.path()});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.mode, "exact");
  const Json& coeffs = doc.payload["coefficients"];
  ASSERT_EQ(coeffs.size(), 8U);
  for (unsigned mask = 0; mask < 8; ++mask) {
    // The complement minor of the all-ones matrix is 1 on at most one index, 0 otherwise.
    const std::string expected = std::popcount(mask) >= 2 ? "1" : "0";
    EXPECT_EQ(coeffs[std::to_string(mask)], expected) << "mask " << mask;
  }
  const Json out = doc.to_json();
  EXPECT_EQ(out["command"], "genpoly");
  EXPECT_EQ(out["status"], 0);
  EXPECT_TRUE(out.contains("timing_ms"));
}

TEST(Execute, GenevalAllOnes) {
  const TempFile file(ones3);
  const ResultDocument doc = run({"geneval", "--input", file.path(), "--lambda", "1,2,3"});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.payload["value"], "17");
  EXPECT_EQ(doc.payload["minor_form"], "17");
  EXPECT_EQ(doc.payload["direct"], "17");
  const ResultDocument zero = run({"geneval", "--input", file.path(), "--lambda", "0,2,3"});
  ASSERT_EQ(zero.status, 0);
  EXPECT_EQ(zero.payload["value"], "6");
  EXPECT_TRUE(zero.payload["minor_form"].is_null());
}

TEST(Execute, QuadformSingularHasNoPayload) {
  const TempFile file(ones3);
  // det(J + diag(lambda)) = prod lambda_k (1 + sum 1/lambda_k) vanishes at lambda = (-3, -3, -3).
  const ResultDocument doc = run({"quadform", "--input", file.path(), "--lambda=-3,-3,-3", "--a", "1,0,0"});
  EXPECT_EQ(doc.status, 4);
  EXPECT_FALSE(doc.error.empty());
  EXPECT_FALSE(doc.to_json().contains("payload"));
  const ResultDocument ok = run({"quadform", "--input", file.path(), "--lambda", "1,2,3", "--a", "1,1,1"});
  ASSERT_EQ(ok.status, 0) << ok.error;
  // C(lambda)^{-1} 1 = (1/17)(6, 3, 2); (., 1) = 11/17.
  EXPECT_EQ(ok.payload["value"], "11/17");
  EXPECT_EQ(ok.payload["one_plus"], "28/17");
}

TEST(Execute, DivergeHarmonicPartialSums) {
  const ResultDocument doc = run({"diverge", "--spec", "harmonic:1,1:4", "--spec", "harmonic:1,1:4", "--N", "4"});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.payload["values"], Json::parse(R"(["1", "3/2", "11/6", "25/12"])"));
  EXPECT_EQ(doc.payload["monotone_nondecreasing"], true);
  EXPECT_EQ(doc.payload["verdict"], "inconclusive");
  const ResultDocument crossed =
      run({"diverge", "--spec", "harmonic:1,1:4", "--spec", "harmonic:1,1:4", "--threshold", "2"});
  EXPECT_EQ(crossed.payload["verdict"], "diverging");
  EXPECT_EQ(crossed.payload["crossing_index"], 4);
}

TEST(Execute, DivergeGramAndDet) {
  const ResultDocument gram =
      run({"diverge", "--kind", "gram", "--spec", "power:1:6", "--spec", "power:-1:6", "--omit", "0"});
  ASSERT_EQ(gram.status, 0) << gram.error;
  // Gram(f0, f1) / Gram(f1) with f0 = (1, ...) and f1 = (-1, 1, ...): n - (f0.f1)^2 / n.
  EXPECT_EQ(gram.payload["values"], Json::parse(R"(["0", "2", "8/3", "4", "24/5", "6"])"));
  const ResultDocument det = run({"diverge", "--kind", "det", "--spec", "power:1:3", "--spec", "harmonic:1,1:3"});
  ASSERT_EQ(det.status, 0) << det.error;
  EXPECT_EQ(det.payload["values"].size(), 3U);
  EXPECT_EQ(run({"diverge", "--kind", "cosine", "--spec", "power:1:3", "--spec", "power:1:3"}).status, 2);
  EXPECT_EQ(run({"diverge", "--spec", "power:1:3"}).status, 2);
  EXPECT_EQ(run({"diverge", "--spec", "custom:1:3", "--spec", "power:1:3"}).status, 2);
  EXPECT_EQ(run({"diverge", "--spec", "harmonic:1:x", "--spec", "power:1:3"}).status, 3);
  EXPECT_EQ(run({"diverge", "--spec", "explicit:1,2:3", "--spec", "power:1:3"}).status, 3);
}

TEST(Execute, OnesDistanceAgrees) {
  const ResultDocument doc = run({"onesdist", "--spec", "explicit:1,1,1:3"});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.payload["closed_form"], "1/4");
  EXPECT_EQ(doc.payload["gram_ratio"], "1/4");
  EXPECT_EQ(doc.payload["agree"], true);
}

TEST(Execute, ResolventForms) {
  const TempFile file("2,1\n1,3\n");
  const ResultDocument gen = run({"resolvent", "--input", file.path(), "--lambda", "1,1"});
  ASSERT_EQ(gen.status, 0) << gen.error;
  // (C + I)^{-1} = [[4, -1], [-1, 3]] / 11.
  EXPECT_EQ(gen.payload["inverse"], Json::parse(R"([["4/11", "-1/11"], ["-1/11", "3/11"]])"));
  const ResultDocument cls = run({"resolvent", "--input", file.path(), "--t", "1"});
  ASSERT_EQ(cls.status, 0) << cls.error;
  // (I - C)^{-1} = [[-1, -1], [-1, -2]]^{-1} = [[-2, 1], [1, -1]].
  EXPECT_EQ(cls.payload["inverse"], Json::parse(R"([["-2", "1"], ["1", "-1"]])"));
  EXPECT_EQ(run({"resolvent", "--input", file.path()}).status, 2);
  EXPECT_EQ(run({"resolvent", "--input", file.path(), "--t", "1", "--lambda", "1,1"}).status, 2);
  EXPECT_EQ(run({"resolvent", "--input", file.path(), "--lambda", "1"}).status, 3);
  EXPECT_EQ(run({"resolvent", "--input", file.path(), "--lambda", "0,1"}).status, 4);
}

TEST(Execute, GramDistanceAndDelta) {
  const TempFile file("3,4,0\n1,0,0\n");
  const ResultDocument dist = run({"gramdist", "--input", file.path()});
  ASSERT_EQ(dist.status, 0) << dist.error;
  EXPECT_EQ(dist.payload["distance_sq_gram"], "16");
  EXPECT_EQ(dist.payload["distance_sq_solve"], "16");
  EXPECT_EQ(dist.payload["coefficients"], Json::parse(R"(["3"])"));
  const TempFile dependent("1,0\n1,1\n2,2\n");
  EXPECT_EQ(run({"gramdist", "--input", dependent.path()}).status, 4);
  const ResultDocument delta = run({"delta", "--input", file.path()});
  ASSERT_EQ(delta.status, 0) << delta.error;
  // det(I + gram(y1, y2)) / det(I + gram(y2)) - 1 = (26 * 2 - 9) / 2 - 1.
  EXPECT_EQ(delta.payload["value"], "41/2");
}

TEST(Execute, Minimize) {
  const ResultDocument w = run({"minimize", "--a", "1,2,3"});
  ASSERT_EQ(w.status, 0) << w.error;
  EXPECT_EQ(w.payload["value"], "6/11");
  const ResultDocument wb = run({"minimize", "--a", "1,4", "--b", "1,2"});
  ASSERT_EQ(wb.status, 0) << wb.error;
  EXPECT_EQ(wb.payload["value"], "1/2");
  const TempFile spd("2,1\n1,2\n");
  const ResultDocument quad = run({"minimize", "--input", spd.path(), "--b", "1,1"});
  ASSERT_EQ(quad.status, 0) << quad.error;
  EXPECT_EQ(quad.payload["value"], "3/2");
  const TempFile indefinite("1,2\n2,1\n");
  EXPECT_EQ(run({"minimize", "--input", indefinite.path(), "--b", "1,1"}).status, 4);
  EXPECT_EQ(run({"minimize", "--a", "1,0"}).status, 4);
}

TEST(Execute, CharpolyRoutes) {
  const TempFile file("2,1\n1,3\n");
  const ResultDocument doc = run({"charpoly", "--input", file.path()});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.payload["coefficients"], Json::parse(R"(["1", "5", "5"])"));
  EXPECT_EQ(doc.payload["routes_agree"], true);
  const TempFile rect("1,2,3\n4,5,6\n");
  EXPECT_EQ(run({"charpoly", "--input", rect.path()}).status, 3);
}

TEST(Execute, ModeResolution) {
  const TempFile as_float(R"({"data": [[1, 2], [3, 4]], "mode": "float"})", ".json");
  const ResultDocument f = run({"charpoly", "--input", as_float.path()});
  ASSERT_EQ(f.status, 0) << f.error;
  EXPECT_EQ(f.mode, "float");
  EXPECT_TRUE(f.payload["coefficients"][1].is_number());
  const ResultDocument e = run({"charpoly", "--input", as_float.path(), "--mode", "exact"});
  EXPECT_EQ(e.mode, "exact");
  EXPECT_EQ(e.payload["coefficients"][2], "-2");
  const TempFile half(R"({"data": [["1/2"]]})", ".json");
  const ResultDocument h = run({"charpoly", "--input", half.path(), "--mode", "float"});
  EXPECT_EQ(h.payload["coefficients"][1], 0.5);
}

TEST(Execute, InputErrors) {
  EXPECT_EQ(run({"charpoly", "--input", "/nonexistent/genchar.csv"}).status, 2);
  EXPECT_EQ(run({"charpoly"}).status, 2);
  const TempFile bad("1,2\n3,y\n");
  const ResultDocument doc = run({"charpoly", "--input", bad.path()});
  EXPECT_EQ(doc.status, 3);
  EXPECT_NE(doc.error.find("line 2, column 3"), std::string::npos) << doc.error;
  const TempFile ragged("1,2\n3\n");
  EXPECT_EQ(run({"charpoly", "--input", ragged.path()}).status, 3);
}

TEST(Execute, SubsetCapFromEnvironment) {
  const TempFile file(ones3);
  EXPECT_EQ(run({"genpoly", "--input", file.path()}, std::string("2")).status, 5);
  EXPECT_EQ(run({"genpoly", "--input", file.path(), "--cap", "3"}, std::string("2")).status, 0);
  EXPECT_EQ(run({"genpoly", "--input", file.path(), "--cap", "30"}).status, 5);
  EXPECT_EQ(run({"genpoly", "--input", file.path(), "--cap", "many"}).status, 2);
  EXPECT_EQ(run({"genpoly", "--input", file.path(), "--mode", "float", "--cap", "24"}).status, 0);
}

TEST(Execute, VerifyPassesOnValidInput) {
  const TempFile file("2,1,0,1\n1,3,1,0\n0,1,4,-1\n5,0,-2,1\n");
  for (const char* mode : {"exact", "float"}) {
    const ResultDocument doc = run({"verify", "--input", file.path(), "--mode", mode});
    ASSERT_EQ(doc.status, 0) << mode << ": " << doc.error;
    EXPECT_EQ(doc.payload["failed"], 0);
    EXPECT_GE(doc.payload["passed"].get<int>(), 15);
  }
  const ResultDocument given = run({"verify", "--input", file.path(), "--lambda", "1,2,3,4", "--a", "1,0,0,1"});
  EXPECT_EQ(given.status, 0) << given.error;
  EXPECT_EQ(given.payload["lambda"], Json::parse(R"(["1", "2", "3", "4"])"));
}

TEST(Execute, BenchTable) {
  const ResultDocument doc = run({"bench", "--mode", "float", "--N", "4", "--grid", "10"});
  ASSERT_EQ(doc.status, 0) << doc.error;
  EXPECT_EQ(doc.payload["rows"].size(), 3U);
  EXPECT_NE(doc.text.find("subset_us/pt"), std::string::npos);
  for (const auto& row : doc.payload["rows"]) EXPECT_LE(row["max_rel_diff"].get<double>(), 1e-9);
  const ResultDocument exact = run({"bench", "--N", "3", "--grid", "5"});
  ASSERT_EQ(exact.status, 0) << exact.error;
  for (const auto& row : exact.payload["rows"]) EXPECT_EQ(row["max_rel_diff"].get<double>(), 0.0);
  EXPECT_EQ(run({"bench", "--grid", "0"}).status, 2);
}
