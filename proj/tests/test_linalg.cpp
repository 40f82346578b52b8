#include "qpfeas/linalg.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "qpfeas/errors.hpp"

using namespace qpfeas;

TEST_CASE("vector and matrix constructors reject non-finite input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Vector({1.0, nan}), InvalidProblem);
  CHECK_THROWS_AS(Vector(std::vector<double>{inf}), InvalidProblem);
  CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {nan, 4.0}}), InvalidProblem);
  CHECK_THROWS_AS(Matrix(2, 1, {1.0, -inf}), InvalidProblem);
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), InvalidProblem);
  CHECK_THROWS_AS(Matrix({{1.0}, {2.0, 3.0}}), InvalidProblem);
}

TEST_CASE("matvec against hand-worked products") {
  Matrix m{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  Vector x{1.0, 0.0, -1.0};
  Vector y = matvec(m, x);
  CHECK(y[0] == doctest::Approx(-2.0));
  CHECK(y[1] == doctest::Approx(-2.0));

  Vector z = matvec_transposed(m, Vector{1.0, 1.0});
  CHECK(z[0] == doctest::Approx(5.0));
  CHECK(z[1] == doctest::Approx(7.0));
  CHECK(z[2] == doctest::Approx(9.0));
}

TEST_CASE("solve_linear on identity and diagonal systems") {
  Vector b{3.0, -1.0, 0.5};
  Vector x = solve_linear(Matrix::identity(3), b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]));

  Matrix d{{2.0, 0.0}, {0.0, -4.0}};
  Vector y = solve_linear(d, Vector{6.0, 8.0});
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[1] == doctest::Approx(-2.0));
}

TEST_CASE("solve_linear requires pivoting for a zero leading entry") {
  Matrix m{{0.0, 1.0}, {1.0, 0.0}};
  Vector x = solve_linear(m, Vector{5.0, 7.0});
  CHECK(x[0] == doctest::Approx(7.0));
  CHECK(x[1] == doctest::Approx(5.0));
}

TEST_CASE("rank-deficient matrices are rejected") {
  CHECK_THROWS_AS(solve_linear(Matrix{{1.0, 1.0}, {1.0, 1.0}}, Vector{1.0, 2.0}),
                  SingularMatrix);
  CHECK_THROWS_AS(solve_linear(Matrix{{0.0, 0.0}, {0.0, 0.0}}, Vector{0.0, 0.0}),
                  SingularMatrix);
}

TEST_CASE("random well-conditioned solves round trip") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 20; ++n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = u(rng);
        off += std::abs(m(i, j));
      }
      m(i, i) += (m(i, i) < 0.0 ? -off : off) + 1.0;
    }
    Vector x_true(n);
    for (std::size_t i = 0; i < n; ++i) x_true[i] = u(rng);
    Vector x = solve_linear(m, matvec(m, x_true));
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - x_true[i]));
    CHECK(err <= 1e-8 * (1.0 + inf_norm(x_true)));
  }
}

TEST_CASE("solves with several interior row swaps stay consistent") {
  // This basis needs two row exchanges during factorization; a solver that
  // mishandles the permutation returns a wrong answer with a large residual.
  Matrix b{{-0.23905411519706932, -0.33922720380584181, -0.33264698935505033},
           {-0.92479594704853041, 0.90758395573392914, 0.44821411664086996},
           {0.9463337777075389, -0.94510857093146672, -0.8225606091867057}};
  Vector r{-0.35170319377781223, -0.17827700205743036, -0.48546797124762042};
  Vector x = solve_linear(b, r);
  Vector back = matvec(b, x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(r[i]).epsilon(1e-10));

  Matrix cyc{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
  Vector y = solve_linear(cyc, Vector{1.0, 2.0, 3.0});
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[1] == doctest::Approx(1.0));
  CHECK(y[2] == doctest::Approx(2.0));
}

TEST_CASE("general dense solves have small residuals") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 11);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = u(rng);
    Vector x;
    try {
      x = solve_linear(m, b);
    } catch (const SingularMatrix&) {
      continue;
    }
    Vector back = matvec(m, x);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(back[i] - b[i]));
    CHECK(res <= 1e-9 * (1.0 + inf_norm(x)) * (1.0 + inf_norm(m)));
  }
}

TEST_CASE("LU factors once and serves several right-hand sides") {
  Matrix m{{4.0, 1.0}, {2.0, 3.0}};
  auto lu = LuDecomposition::factor(m);
  CHECK(lu.dim() == 2);
  for (double t : {0.0, 1.0, -2.5}) {
    Vector b{t, 2.0 * t + 1.0};
    Vector x = lu.solve(b);
    Vector back = matvec(m, x);
    CHECK(back[0] == doctest::Approx(b[0]));
    CHECK(back[1] == doctest::Approx(b[1]));
  }
}

TEST_CASE("cholesky_spd on identity and diagonal matrices") {
  Matrix l = cholesky_spd(Matrix::identity(3));
  CHECK(l == Matrix::identity(3));

  Matrix d{{9.0, 0.0}, {0.0, 16.0}};
  Matrix ld = cholesky_spd(d);
  CHECK(ld(0, 0) == doctest::Approx(3.0));
  CHECK(ld(1, 1) == doctest::Approx(4.0));
  CHECK(ld(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("cholesky_spd rejects indefinite and asymmetric input") {
  CHECK_THROWS_AS(cholesky_spd(Matrix{{1.0, 2.0}, {2.0, 1.0}}), NotPositiveDefinite);
  CHECK_THROWS_AS(cholesky_spd(Matrix{{1.0, 0.5}, {0.4, 1.0}}), InvalidProblem);
  CHECK_THROWS_AS(cholesky_spd(Matrix{{0.0}}), NotPositiveDefinite);
}

TEST_CASE("cholesky recovers a planted lower factor") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) l(i, j) = u(rng);
      l(i, i) = 0.5 + std::abs(u(rng));
    }
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += l(i, k) * l(j, k);
        m(i, j) = s;
      }
    }
    Matrix rec = cholesky_spd(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(rec(i, j) == doctest::Approx(l(i, j)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("cholesky_solve agrees with solve_linear on SPD systems") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
    Matrix g(n, n);
    for (auto i = 0u; i < n; ++i)
      for (auto j = 0u; j < n; ++j) g(i, j) = u(rng);
    Matrix m(n, n);
    for (auto i = 0u; i < n; ++i) {
      for (auto j = 0u; j < n; ++j) {
        double s = (i == j) ? static_cast<double>(n) : 0.0;
        for (auto k = 0u; k < n; ++k) s += g(k, i) * g(k, j);
        m(i, j) = s;
      }
    }
    Vector b(n);
    for (auto i = 0u; i < n; ++i) b[i] = u(rng);
    Vector x1 = cholesky_solve(cholesky_spd(m), b);
    Vector x2 = solve_linear(m, b);
    for (auto i = 0u; i < n; ++i) CHECK(x1[i] == doctest::Approx(x2[i]).epsilon(1e-9));
  }
}
