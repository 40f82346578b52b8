#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qpfeas {

/// Dense vector. Data-carrying constructors reject non-finite entries.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : e_(n, 0.0) {}
  Vector(std::initializer_list<double> xs);
  explicit Vector(std::vector<double> xs);

  std::size_t size() const { return e_.size(); }
  double operator[](std::size_t i) const { return e_[i]; }
  double& operator[](std::size_t i) { return e_[i]; }
  const double* data() const { return e_.data(); }
  double* data() { return e_.data(); }
  const std::vector<double>& entries() const { return e_; }

  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> e_;
};

/// Dense row-major matrix. Data-carrying constructors reject non-finite
/// entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const double* row_data(std::size_t i) const { return e_.data() + i * cols_; }
  double* row_data(std::size_t i) { return e_.data() + i * cols_; }
  const std::vector<double>& entries() const { return e_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> e_;
};

double dot(const Vector& a, const Vector& b);
double inf_norm(const Vector& v);
double inf_norm(const Matrix& m);

/// M x
Vector matvec(const Matrix& m, const Vector& x);
/// Mᵀ x
Vector matvec_transposed(const Matrix& m, const Vector& x);

/// LU with partial pivoting, factored once and reused for several
/// right-hand sides (the simplex refactorization path).
class LuDecomposition {
 public:
  /// Throws SingularMatrix when a pivot falls below 1e-12 times the
  /// column scale of the input.
  static LuDecomposition factor(const Matrix& m);

  Vector solve(const Vector& rhs) const;
  std::size_t dim() const { return lu_.rows(); }

 private:
  LuDecomposition() = default;
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

/// Solves M x = rhs for square M by partially pivoted LU.
Vector solve_linear(const Matrix& m, const Vector& rhs);

/// Lower-triangular L with L Lᵀ = m. Requires m symmetric within 1e-10
/// relative; throws NotPositiveDefinite when a diagonal pivot is not
/// safely positive (threshold 1e-12 times the trace scale).
Matrix cholesky_spd(const Matrix& m);

/// Two triangular solves against a precomputed Cholesky factor.
Vector cholesky_solve(const Matrix& lower, const Vector& rhs);

}  // namespace qpfeas
