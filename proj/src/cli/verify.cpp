#include "genchar/cli/verify.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <random>

#include "genchar/gram.hpp"
#include "genchar/linalg.hpp"
#include "genchar/optimize.hpp"
#include "genchar/resolvent.hpp"

namespace genchar::cli {

namespace {

constexpr double float_tol = 1e-9;

// Thrown inside a check body to report the first mismatch.
struct Mismatch {
  std::string detail;
};

struct Skip {
  std::string reason;
};

template <Field T>
bool same(const T& x, const T& y) {
  if constexpr (is_exact_v<T>) {
    return x == y;
  } else {
    return nearly_equal(x, y, float_tol);
  }
}

template <Field T>
void expect(const T& got, const T& want, const std::string& where) {
  if (!same(got, want)) throw Mismatch{where + ": " + to_string(got) + " != " + to_string(want)};
}

template <Field T>
void expect(const Matrix<T>& got, const Matrix<T>& want, const std::string& where) {
  if (got.rows() != want.rows() || got.cols() != want.cols()) throw Mismatch{where + ": shape differs"};
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (!same(got(i, j), want(i, j)))
        throw Mismatch{where + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") " +
                       to_string(got(i, j)) + " != " + to_string(want(i, j))};
}

template <Field T>
void expect(const std::vector<T>& got, const std::vector<T>& want, const std::string& where) {
  if (got.size() != want.size()) throw Mismatch{where + ": length differs"};
  for (std::size_t k = 0; k < got.size(); ++k)
    if (!same(got[k], want[k]))
      throw Mismatch{where + ": index " + std::to_string(k) + " " + to_string(got[k]) + " != " + to_string(want[k])};
}

template <Field T>
bool singular(const Matrix<T>& m) {
  return is_singular(determinant(m), m);
}

template <Field T>
T quad(const Matrix<T>& m, const Vector<T>& a) {
  return dot<T>(a, m * std::span<const T>(a));
}

class Runner {
 public:
  void run(const std::string& name, const std::function<void()>& body) {
    IdentityCheck check{name, CheckStatus::passed, {}};
    try {
      body();
    } catch (const Mismatch& m) {
      check.status = CheckStatus::failed;
      check.detail = m.detail;
    } catch (const Skip& s) {
      check.status = CheckStatus::skipped;
      check.detail = s.reason;
    } catch (const Error& e) {
      check.status = CheckStatus::failed;
      check.detail = std::string("unexpected error: ") + e.what();
    }
    report.checks.push_back(std::move(check));
  }

  VerifyReport report;
};

}  // namespace

bool VerifyReport::all_passed() const { return first_failure() == nullptr; }

const IdentityCheck* VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::failed) return &c;
  return nullptr;
}

Json VerifyReport::to_json() const {
  Json list = Json::array();
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks) {
    const char* status = c.status == CheckStatus::passed ? "passed" : c.status == CheckStatus::failed ? "failed" : "skipped";
    (c.status == CheckStatus::passed ? passed : c.status == CheckStatus::failed ? failed : skipped) += 1;
    Json entry{{"identity", c.name}, {"status", status}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    list.push_back(std::move(entry));
  }
  Json doc{{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"checks", std::move(list)}};
  if (const auto* f = first_failure()) doc["first_failure"] = Json{{"identity", f->name}, {"detail", f->detail}};
  return doc;
}

template <Field T>
VerifyReport run_verify(const Matrix<T>& c, const Vector<T>& lambda, const Vector<T>& a, std::uint64_t seed,
                        SubsetCap cap) {
  if (!c.is_square()) throw ShapeError("verify needs a square matrix");
  const auto n = static_cast<unsigned>(c.rows());
  if (n == 0) throw ShapeError("verify needs a nonempty matrix");
  if (lambda.size() != n || a.size() != n) throw ShapeError("lambda and a must have one entry per row of C");
  cap.check(n, mode_of_v<T>);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-6, 6);
  const Matrix<T> id = Matrix<T>::identity(n);
  const T det = determinant(c);
  const GenCharPoly<T> poly = gen_charpoly(c, cap);
  const CharPolyCoeffs<T> classical = char_coeffs_faddeev(c);
  Runner r;

  r.run("adjugate_product", [&] {
    const Matrix<T> adj = adjugate_transpose(c);
    expect(adj * c, id * det, "adj^T(C) C");
    expect(c * adj, id * det, "C adj^T(C)");
  });

  r.run("principal_cofactor_complement", [&] {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const SubsetIndex alpha(mask, n);
      const SubsetIndex rest = alpha.complement();
      const T want = rest.is_empty() ? T(1) : minor(c, rest, rest);
      expect(poly[alpha], want, "alpha=" + alpha.to_string());
    }
  });

  r.run("coefficient_triple_agreement", [&] {
    expect(char_coeffs_trace_det(c).c, classical.c, "trace-determinant vs Faddeev");
    expect(char_coeffs_minor_sum(c).c, classical.c, "minor sum vs Faddeev");
    expect(classical.c[1], c.trace(), "c_1 = trace");
    expect(classical.c[n], det, "c_n = det");
  });

  r.run("subset_coefficients_sum_to_classical", [&] {
    std::vector<T> by_size(n + 1, T(0));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
      by_size[n - static_cast<unsigned>(std::popcount(mask))] += poly.coeff(mask);
    expect(by_size, classical.c, "sum over |alpha| = n-k");
  });

  r.run("cayley_hamilton", [&] {
    Matrix<T> acc(n, n);
    for (std::size_t k = 0; k <= n; ++k) {
      acc = acc * c;
      acc += id * (k % 2 == 0 ? classical.c[k] : T(-classical.c[k]));
    }
    if constexpr (is_exact_v<T>) {
      expect(acc, Matrix<T>(n, n), "p_C(C)");
    } else {
      // Residual relative to the size of the largest term.
      double scale = 1.0;
      Matrix<T> power = id;
      for (std::size_t k = 0; k <= n; ++k) {
        scale = std::max(scale, std::fabs(classical.c[n - k]) * to_double(inf_norm(power)));
        power = power * c;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (std::fabs(acc(i, j)) > float_tol * scale)
            throw Mismatch{"p_C(C) entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                           to_string(acc(i, j))};
    }
  });

  std::vector<Vector<T>> lambdas{lambda};
  for (int extra = 0; extra < 4; ++extra) {
    Vector<T> l(n);
    for (auto& x : l) x = T(small(rng));
    lambdas.push_back(std::move(l));
  }

  r.run("genpoly_equals_determinant", [&] {
    for (std::size_t g = 0; g < lambdas.size(); ++g)
      expect(eval_gen_charpoly(poly, lambdas[g]), determinant(add_diagonal(c, lambdas[g])),
             "lambda #" + std::to_string(g));
  });

  r.run("minor_form_equals_cofactor_form", [&] {
    std::size_t used = 0;
    for (std::size_t g = 0; g < lambdas.size(); ++g) {
      bool nonzero = true;
      for (const auto& x : lambdas[g]) nonzero = nonzero && !is_zero(x);
      if (!nonzero) continue;
      ++used;
      expect(eval_gen_charpoly_minor_form(poly, lambdas[g]), eval_gen_charpoly(poly, lambdas[g]),
             "lambda #" + std::to_string(g));
    }
    if (used == 0) throw Skip{"every lambda has a zero entry"};
  });

  r.run("specialization_to_classical", [&] {
    for (long t = -3; t <= 3; ++t) {
      const Vector<T> l(n, T(-t));
      const T sign = n % 2 == 0 ? T(1) : T(-1);
      expect(eval_gen_charpoly(poly, l), sign * classical.evaluate(T(t)), "t=" + std::to_string(t));
    }
  });

  bool lambda_ok = true;
  for (const auto& x : lambda) lambda_ok = lambda_ok && !is_zero(x);
  const Matrix<T> shifted = add_diagonal(c, lambda);
  const bool shifted_singular = singular(shifted);

  r.run("resolvent_reconstruction", [&] {
    if (!lambda_ok) throw Skip{"lambda has a zero entry"};
    if (shifted_singular) throw Skip{"C(lambda) is singular"};
    const GenResolventTerms<T> terms = gen_resolvent_terms(c, cap);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      const SubsetIndex alpha(mask, n);
      const Matrix<T> term = terms.term(alpha);
      expect(submatrix(term, alpha, alpha), terms.block(alpha), "embedding alpha=" + alpha.to_string());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((!alpha.contains(static_cast<unsigned>(i + 1)) || !alpha.contains(static_cast<unsigned>(j + 1))) &&
              !is_zero(term(i, j)))
            throw Mismatch{"term alpha=" + alpha.to_string() + " nonzero outside alpha x alpha"};
    }
    const Matrix<T> inv = eval_gen_resolvent(terms, lambda);
    expect(shifted * inv, id, "C(lambda) R");
    expect(inv * shifted, id, "R C(lambda)");
    expect(quad_form_gen(terms, lambda, a), quad(inv, a), "quad_form_gen vs (R a, a)");
    expect(one_plus_quadform(c, lambda, a), T(1) + quad(inv, a), "one_plus_quadform");
  });

  r.run("classical_resolvent", [&] {
    for (long t = 0; t < 50; ++t) {
      const T tt(t * 7 + 1);
      const Matrix<T> m = id * tt - c;
      if (singular(m)) continue;
      expect(m * classical_resolvent(c, tt, cap), id, "(tI - C) R(t) at t=" + to_string(tt));
      return;
    }
    throw Skip{"no nonsingular t found"};
  });

  r.run("rank_one_determinant", [&] {
    if (singular(c)) throw Skip{"C is singular"};
    const Vector<T> y = solve<T>(c, a);
    const T q = dot<T>(y, a);
    expect(determinant(c + rank_one(a)), det * (T(1) + q), "det(C + a(x)a)");
    expect(rank_one_det_ratio(c, a), T(1) + q, "ratio");
    Matrix<T> inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector<T> e(n, T(0));
      e[j] = T(1);
      const Vector<T> col = solve<T>(c, e);
      for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    const Matrix<T> d = inv * rank_one(a);
    const T tr = d.trace();
    Matrix<T> power = d;
    T tr_pow = tr;
    for (int k = 2; k <= 5; ++k) {
      power = power * d;
      tr_pow *= tr;
      expect(power.trace(), tr_pow, "tr(D^" + std::to_string(k) + ")");
    }
  });

  r.run("sylvester_shift", [&] {
    for (std::size_t m = 1; m <= n; ++m) {
      Matrix<T> x(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = c(i, j);
      expect(determinant(Matrix<T>::identity(n) + x.transpose() * x),
             determinant(Matrix<T>::identity(m) + x * x.transpose()), "first " + std::to_string(m) + " rows");
    }
    expect(determinant(c.transpose() * c), det * det, "det(C^T C) = det(C)^2");
    expect(determinant(c * c.transpose()), det * det, "det(C C^T) = det(C)^2");
  });

  r.run("distance_forms", [&] {
    if (n < 2) throw Skip{"needs at least two rows"};
    SpanProblem<T> p{c.row_vector(0), {}};
    for (std::size_t i = 1; i < n; ++i) p.basis.push_back(c.row_vector(i));
    const Matrix<T> g = gram_matrix<T>(p.basis);
    if (singular(g)) throw Skip{"rows 2..n are dependent"};
    const T via_gram = distance_sq_gram(p);
    const SpanSolution<T> via_solve = distance_sq_solve(p);
    expect(via_solve.distance_sq, via_gram, "solve vs Gram ratio");
    Vector<T> residual = p.target;
    for (std::size_t k = 0; k < p.basis.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) residual[j] -= via_solve.coefficients[k] * p.basis[k][j];
    expect(dot<T>(residual, residual), via_gram, "least-squares residual");
  });

  r.run("gram_reduction", [&] {
    const std::size_t m = std::min<std::size_t>(3, n);
    GramReductionInput<T> in;
    in.rows = Matrix<T>(m, n);
    for (std::size_t j = 0; j < n; ++j) in.rows(0, j) = a[j];
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) in.rows(i, j) = c(i, j);
    in.lambda.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const T base = is_zero(lambda[k]) ? T(1) : abs_of(lambda[k]);
      in.lambda[k] = base * base;
    }
    expect(gram_reduction_ratio(in), one_plus_quadform(in.gram_base(), in.lambda, in.a()), "m=" + std::to_string(m));
  });

  r.run("det_ratio_equals_one_plus_delta", [&] {
    std::vector<Vector<T>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(c.row_vector(i));
    std::vector<SequenceSpec<T>> specs;
    for (const auto& row : rows) specs.push_back(SequenceSpec<T>::explicit_values(row));
    const DivergenceReport<T> report = det_ratio_sequence<T>(specs, 0, n);
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<Vector<T>> truncated;
      for (const auto& row : rows) truncated.emplace_back(row.begin(), row.begin() + static_cast<long>(len));
      expect(*report.values[len - 1], T(1) + delta_functional<T>(truncated), "truncation n=" + std::to_string(len));
    }
  });

  return r.report;
}

template VerifyReport run_verify<Rational>(const Matrix<Rational>&, const Vector<Rational>&, const Vector<Rational>&,
                                           std::uint64_t, SubsetCap);
template VerifyReport run_verify<double>(const Matrix<double>&, const Vector<double>&, const Vector<double>&,
                                         std::uint64_t, SubsetCap);

}  // namespace genchar::cli
