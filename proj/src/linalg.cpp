#include "qpfeas/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include "qpfeas/errors.hpp"

namespace qpfeas {

namespace {

void require_finite(const std::vector<double>& xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw InvalidProblem(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

Vector::Vector(std::initializer_list<double> xs) : e_(xs) { require_finite(e_, "vector"); }

Vector::Vector(std::vector<double> xs) : e_(std::move(xs)) { require_finite(e_, "vector"); }

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) {
    throw InvalidProblem("matrix entry count does not match rows*cols");
  }
  require_finite(e_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  e_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidProblem("ragged matrix initializer");
    e_.insert(e_.end(), r.begin(), r.end());
  }
  require_finite(e_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double inf_norm(const Matrix& m) {
  double s = 0.0;
  for (double x : m.entries()) s = std::max(s, std::abs(x));
  return s;
}

Vector matvec(const Matrix& m, const Vector& x) {
  Vector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* row = m.row_data(i);
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_transposed(const Matrix& m, const Vector& x) {
  Vector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* row = m.row_data(i);
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += row[j] * x[i];
  }
  return y;
}

LuDecomposition LuDecomposition::factor(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidProblem("LU requires a square matrix");
  const std::size_t n = m.rows();

  // Column scales from the unfactored matrix anchor the pivot threshold.
  std::vector<double> col_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      col_scale[j] = std::max(col_scale[j], std::abs(m(i, j)));
    }
  }

  LuDecomposition f;
  f.lu_ = m;
  f.perm_.resize(n);
  Matrix& a = f.lu_;

  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    double piv_abs = std::abs(a(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      const double v = std::abs(a(i, j));
      if (v > piv_abs) {
        piv_abs = v;
        piv = i;
      }
    }
    if (piv_abs <= 1e-12 * col_scale[j] || col_scale[j] == 0.0) {
      throw SingularMatrix("no pivot above threshold in column " + std::to_string(j));
    }
    f.perm_[j] = piv;
    if (piv != j) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(j, k), a(piv, k));
    }
    const double inv = 1.0 / a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      const double l = a(i, j) * inv;
      a(i, j) = l;
      if (l != 0.0) {
        const double* src = a.row_data(j);
        double* dst = a.row_data(i);
        for (std::size_t k = j + 1; k < n; ++k) dst[k] -= l * src[k];
      }
    }
  }
  return f;
}

Vector LuDecomposition::solve(const Vector& rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw InvalidProblem("rhs length does not match matrix dimension");
  Vector x = rhs;
  // The factor swapped whole rows, so the permutation must be applied to
  // the rhs in full before the triangular solves.
  for (std::size_t j = 0; j < n; ++j) {
    if (perm_[j] != j) std::swap(x[j], x[perm_[j]]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) x[i] -= lu_(i, j) * x[j];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const double* row = lu_.row_data(ii);
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= row[k] * x[k];
    x[ii] = s / row[ii];
  }
  return x;
}

Vector solve_linear(const Matrix& m, const Vector& rhs) {
  return LuDecomposition::factor(m).solve(rhs);
}

Matrix cholesky_spd(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidProblem("Cholesky requires a square matrix");
  const std::size_t n = m.rows();
  const double scale = inf_norm(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * std::max(scale, 1.0)) {
        throw InvalidProblem("matrix is not symmetric within tolerance");
      }
    }
  }

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
  const double pivot_floor = 1e-12 * std::max(std::abs(trace), std::numeric_limits<double>::min());

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= pivot_floor) {
      throw NotPositiveDefinite("diagonal pivot " + std::to_string(j) + " is not positive");
    }
    const double root = std::sqrt(d);
    l(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / root;
    }
  }
  return l;
}

Vector cholesky_solve(const Matrix& lower, const Vector& rhs) {
  const std::size_t n = lower.rows();
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * y[k];
    y[i] = s / lower(i, i);
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower(k, ii) * x[k];
    x[ii] = s / lower(ii, ii);
  }
  return x;
}

}  // namespace qpfeas
