#include "genchar/linalg.hpp"

#include <cmath>
#include <utility>

namespace genchar {

namespace {

template <Field T>
void require_square(const Matrix<T>& c, const char* what) {
  if (!c.is_square()) throw ShapeError(std::string(what) + " requires a square matrix");
}

void require_fits(SubsetIndex s, std::size_t dim, const char* what) {
  if (s.ambient() != dim)
    throw ShapeError(std::string(what) + ": subset over " + std::to_string(s.ambient()) +
                     " indices used on dimension " + std::to_string(dim));
}

Rational bareiss_determinant(const Matrix<Rational>& c) {
  const std::size_t n = c.rows();
  if (n == 0) return Rational(1);

  // Scale each row by the lcm of its denominators so elimination runs over Z.
  std::vector<mpz_class> a(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (const Rational& x : c.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = c(i, j);
      mpz_divexact(a[i * n + j].get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
      a[i * n + j] *= x.numerator();
    }
    scale *= l;
  }

  mpz_class prev = 1;
  mpz_class tmp;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      negate = !negate;
    }
    const mpz_class& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_class& lead = a[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class& x = a[i * n + j];
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), pivot.get_mpz_t());
        mpz_mul(tmp.get_mpz_t(), lead.get_mpz_t(), a[k * n + j].get_mpz_t());
        x -= tmp;
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }
  mpz_class det = a[n * n - 1];
  if (negate) det = -det;
  return Rational(det, scale);
}

double pivoted_determinant(Matrix<double> a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > best) {
        best = std::fabs(a(i, k));
        p = i;
      }
    if (best == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    const double pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// Smallest |pivot| of partial-pivot elimination; 0 for an exactly singular matrix.
double smallest_pivot(Matrix<double> a) {
  const std::size_t n = a.rows();
  double smallest = n == 0 ? 1.0 : std::fabs(a(0, 0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
    const double pivot = a(p, k);
    smallest = k == 0 ? std::fabs(pivot) : std::min(smallest, std::fabs(pivot));
    if (pivot == 0.0) return 0.0;
    if (p != k)
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return smallest;
}

// Row/column-deleted submatrix used for first-order cofactors.
template <Field T>
Matrix<T> without(const Matrix<T>& c, std::size_t row, std::size_t col) {
  const std::size_t n = c.rows();
  Matrix<T> m(n - 1, n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m(mi, mj++) = c(i, j);
    }
    ++mi;
  }
  return m;
}

}  // namespace

template <Field T>
Matrix<T> submatrix(const Matrix<T>& c, SubsetIndex rows, SubsetIndex cols) {
  require_fits(rows, c.rows(), "submatrix rows");
  require_fits(cols, c.cols(), "submatrix cols");
  const auto ri = rows.positions();
  const auto ci = cols.positions();
  Matrix<T> s(ri.size(), ci.size());
  for (std::size_t i = 0; i < ri.size(); ++i)
    for (std::size_t j = 0; j < ci.size(); ++j) s(i, j) = c(ri[i], ci[j]);
  return s;
}

template <Field T>
T minor(const Matrix<T>& c, SubsetIndex rows, SubsetIndex cols) {
  if (rows.count() != cols.count()) throw ShapeError("minor needs equally many rows and columns");
  if (rows.count() == 0) throw ShapeError("minor of order zero requested");
  return determinant(submatrix(c, rows, cols));
}

template <Field T>
T principal_cofactor(const Matrix<T>& c, SubsetIndex alpha) {
  require_square(c, "principal_cofactor");
  require_fits(alpha, c.rows(), "principal_cofactor");
  const SubsetIndex rest = alpha.complement();
  if (rest.is_empty()) return T(1);
  return determinant(submatrix(c, rest, rest));
}

template <Field T>
Matrix<T> adjugate(const Matrix<T>& c) {
  require_square(c, "adjugate");
  const std::size_t n = c.rows();
  if (n == 0) throw ShapeError("adjugate of an empty matrix");
  if (n == 1) return Matrix<T>{{T(1)}};
  Matrix<T> cof(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T m = determinant(without(c, i, j));
      cof(i, j) = ((i + j) % 2 == 0) ? m : T(-m);
    }
  return cof;
}

template <Field T>
Matrix<T> adjugate_transpose(const Matrix<T>& c) {
  return adjugate(c).transpose();
}

template <Field T>
T determinant(const Matrix<T>& c) {
  require_square(c, "determinant");
  if constexpr (is_exact_v<T>) {
    return bareiss_determinant(c);
  } else {
    if (c.rows() == 0) return 1.0;
    return pivoted_determinant(c);
  }
}

template <Field T>
Matrix<T> embed_subset(const Matrix<T>& b, SubsetIndex alpha, unsigned n) {
  require_fits(alpha, n, "embed_subset");
  if (!b.is_square() || b.rows() != alpha.count())
    throw ShapeError("embed_subset: block is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     " but subset has " + std::to_string(alpha.count()) + " members");
  const auto pos = alpha.positions();
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) out(pos[i], pos[j]) = b(i, j);
  return out;
}

template <Field T>
Matrix<T> gram_matrix(std::span<const Vector<T>> vectors) {
  const std::size_t k = vectors.size();
  for (const auto& v : vectors)
    if (v.size() != vectors.front().size()) throw ShapeError("gram_matrix: vectors of unequal length");
  Matrix<T> g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      T s = dot<T>(vectors[i], vectors[j]);
      if (i != j) g(j, i) = s;
      g(i, j) = std::move(s);
    }
  return g;
}

template <Field T>
Matrix<T> rank_one(const Vector<T>& a) {
  Matrix<T> m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i] * a[j];
  return m;
}

template <Field T>
Vector<T> subvector(VectorView<T> a, SubsetIndex alpha) {
  require_fits(alpha, a.size(), "subvector");
  Vector<T> out;
  out.reserve(alpha.count());
  for (std::size_t p : alpha.positions()) out.push_back(a[p]);
  return out;
}

template <Field T>
Vector<T> solve(const Matrix<T>& a, VectorView<T> b) {
  require_square(a, "solve");
  const std::size_t n = a.rows();
  if (b.size() != n) throw ShapeError("solve: right-hand side length mismatch");
  Matrix<T> m = a;
  Vector<T> x(b.begin(), b.end());
  [[maybe_unused]] const double guard = is_exact_v<T> ? 0.0 : 1e-12 * to_double(inf_norm(a));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (is_exact_v<T>) {
      while (p < n && is_zero(m(p, k))) ++p;
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    }
    bool singular = p == n;
    if constexpr (!is_exact_v<T>) singular = std::fabs(m(p, k)) <= guard;
    if (singular)
      throw SingularError("solve: singular system at column " + std::to_string(k + 1), "0");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      const T f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) x[k] -= m(k, j) * x[j];
    x[k] /= m(k, k);
  }
  return x;
}

template <Field T>
bool is_singular(const T& det, const Matrix<T>& m) {
  if constexpr (is_exact_v<T>) {
    return is_zero(det);
  } else {
    return det == 0.0 || smallest_pivot(m) <= 1e-12 * inf_norm(m);
  }
}

#define GENCHAR_INSTANTIATE(T)                                                   \
  template Matrix<T> submatrix(const Matrix<T>&, SubsetIndex, SubsetIndex);     \
  template T minor(const Matrix<T>&, SubsetIndex, SubsetIndex);                 \
  template T principal_cofactor(const Matrix<T>&, SubsetIndex);                 \
  template Matrix<T> adjugate(const Matrix<T>&);                                \
  template Matrix<T> adjugate_transpose(const Matrix<T>&);                      \
  template T determinant(const Matrix<T>&);                                     \
  template Matrix<T> embed_subset(const Matrix<T>&, SubsetIndex, unsigned);     \
  template Matrix<T> gram_matrix(std::span<const Vector<T>>);                   \
  template Matrix<T> rank_one(const Vector<T>&);                                \
  template Vector<T> subvector<T>(VectorView<T>, SubsetIndex);                  \
  template Vector<T> solve<T>(const Matrix<T>&, VectorView<T>);                 \
  template bool is_singular(const T&, const Matrix<T>&);

GENCHAR_INSTANTIATE(Rational)
GENCHAR_INSTANTIATE(double)

#undef GENCHAR_INSTANTIATE

}  // namespace genchar
