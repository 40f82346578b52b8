#include "qpfeas/feasibility.hpp"

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fm_oracle.hpp"
#include "qpfeas/errors.hpp"
#include "qpfeas/linalg.hpp"
#include "qpfeas/simplex.hpp"

using namespace qpfeas;

namespace {

std::vector<ConstraintKind> kinds_from(const std::string& tags) {
  std::vector<ConstraintKind> out;
  for (char c : tags) {
    out.push_back(c == 'h' ? ConstraintKind::Hard : ConstraintKind::Soft);
  }
  return out;
}

QpInstance make_qp(Matrix a, Vector b, const std::string& tags) {
  const std::size_t m = a.rows();
  return QpInstance(Matrix::identity(m), Vector(m), std::move(a), std::move(b),
                    kinds_from(tags));
}

/// The inequality system selected by a configuration, for the reference
/// oracle: P_j·(a_j·u) ≤ P_j·b_j.
std::vector<fmref::Ineq> signed_system(const QpInstance& qp, const Configuration& config) {
  std::vector<fmref::Ineq> sys(qp.constraint_count());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const double p = config.sign(j);
    sys[j].a.resize(qp.dimension());
    for (std::size_t i = 0; i < qp.dimension(); ++i) sys[j].a[i] = p * qp.a()(i, j);
    sys[j].b = p * qp.b()[j];
  }
  return sys;
}

void check_certificate(const QpInstance& qp, const Configuration& config,
                       const FeasibilityVerdict& v) {
  REQUIRE(v.status == FeasibilityStatus::Infeasible);
  const Vector& lam = v.certificate;
  REQUIRE(lam.size() == qp.constraint_count());
  double norm1 = 0.0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (config.sign(j) > 0) {
      CHECK(lam[j] >= -1e-12);
    } else {
      CHECK(lam[j] <= 1e-12);
    }
    norm1 += std::abs(lam[j]);
  }
  CHECK(norm1 == doctest::Approx(1.0).epsilon(1e-9));
  Vector img = matvec(qp.a(), lam);
  CHECK(inf_norm(img) <= 1e-7 * (1.0 + inf_norm(qp.a())));
  CHECK(-dot(qp.b(), lam) >= 1e-7);

  // The cone is homogeneous: any positive multiple certifies equally.
  Vector twice(lam.size());
  for (std::size_t j = 0; j < lam.size(); ++j) twice[j] = 2.0 * lam[j];
  CHECK(inf_norm(matvec(qp.a(), twice)) <= 2e-7 * (1.0 + inf_norm(qp.a())));
  CHECK(-dot(qp.b(), twice) >= 2e-7);
}

QpInstance random_qp(std::mt19937_64& rng, std::size_t m, std::size_t c,
                     double hard_share = 0.3) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix a(m, c);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = g(rng);
  Vector b(c);
  std::string tags;
  for (std::size_t j = 0; j < c; ++j) {
    b[j] = g(rng);
    tags += (u(rng) < hard_share) ? 'h' : 's';
  }
  return make_qp(std::move(a), std::move(b), tags);
}

Configuration random_config(std::mt19937_64& rng, const QpInstance& qp) {
  std::vector<int> signs(qp.constraint_count(), 1);
  for (std::size_t j : qp.soft_indices()) {
    if ((rng() & 1u) != 0) signs[j] = -1;
  }
  return Configuration(std::move(signs));
}

}  // namespace

TEST_CASE("dual program construction on a one-dimensional pair") {
  auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");

  SUBCASE("both constraints enforced") {
    auto lp = build_dual_lp(qp, Configuration::all_plus(2));
    CHECK(lp.objective == Vector{-1.0, 2.0});
    CHECK(lp.eq_matrix == Matrix{{1.0, -1.0}, {1.0, 1.0}});
    CHECK(lp.eq_rhs == Vector{0.0, 1.0});
  }
  SUBCASE("second constraint disregarded flips its column and cost") {
    auto lp = build_dual_lp(qp, Configuration({1, -1}));
    CHECK(lp.objective == Vector{-1.0, -2.0});
    CHECK(lp.eq_matrix == Matrix{{1.0, 1.0}, {1.0, 1.0}});
    CHECK(lp.eq_rhs == Vector{0.0, 1.0});
  }
  SUBCASE("all-plus cone program is the plain nullspace cone") {
    auto cone = build_cone_lp(qp, Configuration::all_plus(2));
    CHECK(cone.eq_matrix == qp.a());
    CHECK(cone.objective == Vector{-1.0, 2.0});
    CHECK(cone.eq_rhs == Vector{0.0});
  }
}

TEST_CASE("feasibility verdicts on hand-checked interval systems") {
  SUBCASE("u <= 1 and u >= 2 is empty; the balanced multiplier certifies it") {
    auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");
    auto v = check_feasibility(qp, Configuration::all_plus(2));
    REQUIRE_FALSE(v.feasible());
    CHECK(v.certificate[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.certificate[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*v.lp_optimum == doctest::Approx(0.5));
    check_certificate(qp, Configuration::all_plus(2), v);
  }
  SUBCASE("0 <= u <= 1 is nonempty") {
    auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, 0.0}, "ss");
    auto v = check_feasibility(qp, Configuration::all_plus(2));
    CHECK(v.feasible());
    CHECK_FALSE(v.cone_trivial);
    // The cross-section is the single point μ = (1/2, 1/2).
    CHECK(*v.lp_optimum == doctest::Approx(-0.5));
  }
  SUBCASE("disregarding one side makes the cone trivial") {
    auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");
    auto v = check_feasibility(qp, Configuration({1, -1}));
    CHECK(v.feasible());
    CHECK(v.cone_trivial);
  }
}

TEST_CASE("two-dimensional wedge against its reference oracle") {
  auto qp = make_qp(Matrix{{1.0, 0.0, -1.0}, {0.0, 1.0, -1.0}}, Vector{0.0, 0.0, -1.0}, "sss");

  auto plus = Configuration::all_plus(3);
  REQUIRE_FALSE(fmref::feasible(signed_system(qp, plus)));
  auto v = check_feasibility(qp, plus);
  REQUIRE_FALSE(v.feasible());
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(v.certificate[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  check_certificate(qp, plus, v);

  auto relaxed = Configuration({1, 1, -1});
  REQUIRE(fmref::feasible(signed_system(qp, relaxed)));
  CHECK(check_feasibility(qp, relaxed).feasible());
}

TEST_CASE("phase-1 baseline totals the violation magnitudes") {
  SUBCASE("unit gap between u <= 1 and u >= 2") {
    auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");
    auto v = phase1_check(qp, Configuration::all_plus(2));
    REQUIRE_FALSE(v.feasible());
    // 1-D reference: minimize max(0, u-1) + max(0, 2-u) by scanning.
    double best = 1e30;
    for (double u = -5.0; u <= 5.0; u += 1e-3) {
      best = std::min(best, std::max(0.0, u - 1.0) + std::max(0.0, 2.0 - u));
    }
    CHECK(*v.lp_optimum == doctest::Approx(best).epsilon(1e-9));
    CHECK(*v.lp_optimum == doctest::Approx(1.0));
  }
  SUBCASE("a satisfiable interval has zero violation") {
    auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, 0.0}, "ss");
    auto v = phase1_check(qp, Configuration::all_plus(2));
    CHECK(v.feasible());
    CHECK(*v.lp_optimum == doctest::Approx(0.0));
  }
  SUBCASE("wedge violation: grid scan pins the optimum at one") {
    auto qp =
        make_qp(Matrix{{1.0, 0.0, -1.0}, {0.0, 1.0, -1.0}}, Vector{0.0, 0.0, -1.0}, "sss");
    auto v = phase1_check(qp, Configuration::all_plus(3));
    REQUIRE_FALSE(v.feasible());
    double best = 1e30;
    for (double x = -2.0; x <= 2.0; x += 0.01) {
      for (double y = -2.0; y <= 2.0; y += 0.01) {
        best = std::min(best, std::max(0.0, x) + std::max(0.0, y) +
                                  std::max(0.0, 1.0 - x - y));
      }
    }
    // Lower bound argument: each term dominates its argument, so the sum
    // is at least x + y + (1 - x - y) = 1, attained at the origin.
    CHECK(best == doctest::Approx(1.0));
    CHECK(*v.lp_optimum == doctest::Approx(best).epsilon(1e-9));
    Vector z = v.certificate;
    CHECK(z.size() == 3);
    double total = 0.0;
    for (double zi : z) {
      CHECK(zi >= 0.0);
      total += zi;
    }
    CHECK(total == doctest::Approx(*v.lp_optimum));
  }
}

TEST_CASE("the two deciders agree on the worked examples") {
  auto qp1 = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");
  CHECK(verdicts_agree(qp1, Configuration::all_plus(2)));
  CHECK(verdicts_agree(qp1, Configuration({1, -1})));
  auto qp2 = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, 0.0}, "ss");
  CHECK(verdicts_agree(qp2, Configuration::all_plus(2)));
  auto qp3 =
      make_qp(Matrix{{1.0, 0.0, -1.0}, {0.0, 1.0, -1.0}}, Vector{0.0, 0.0, -1.0}, "sss");
  CHECK(verdicts_agree(qp3, Configuration::all_plus(3)));

  std::mt19937_64 rng1(1);
  CHECK(verdicts_agree(random_qp(rng1, 5, 20), Configuration::all_plus(20)));
  std::mt19937_64 rng2(2);
  CHECK(verdicts_agree(random_qp(rng2, 2, 200), Configuration::all_plus(200)));
}

TEST_CASE("random systems: dual verdict, baseline, and elimination all agree") {
  std::mt19937_64 rng(27182);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 3;
    const std::size_t c = 1 + static_cast<std::size_t>(rng() % 10);
    auto qp = random_qp(rng, m, c);
    auto config = random_config(rng, qp);

    auto dual = check_feasibility(qp, config);
    auto base = phase1_check(qp, config);
    CHECK(dual.status == base.status);
    const bool ref = fmref::feasible(signed_system(qp, config));
    CHECK(dual.feasible() == ref);
    if (!dual.feasible()) {
      check_certificate(qp, config, dual);
      ++infeasible_seen;
    }
  }
  CHECK(infeasible_seen > 30);
}

TEST_CASE("status ignores the objective data entirely") {
  std::mt19937_64 rng(31415);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    auto qp = random_qp(rng, 2 + trial % 3, 4 + trial % 6);
    auto config = random_config(rng, qp);
    auto before = check_feasibility(qp, config);

    const std::size_t m = qp.dimension();
    Matrix l(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) l(i, j) = g(rng);
      l(i, i) = 0.5 + std::abs(g(rng));
    }
    Matrix h2(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < m; ++t) s += l(i, t) * l(j, t);
        h2(i, j) = s;
      }
    Vector f2(m);
    for (std::size_t i = 0; i < m; ++i) f2[i] = g(rng);
    QpInstance other(h2, f2, qp.a(), qp.b(), qp.kinds());
    CHECK(check_feasibility(other, config).status == before.status);
  }
}

TEST_CASE("status is invariant under positive scalings") {
  std::mt19937_64 rng(161803);
  std::uniform_real_distribution<double> scale(0.05, 20.0);
  for (int trial = 0; trial < 60; ++trial) {
    auto qp = random_qp(rng, 2 + trial % 2, 3 + trial % 7);
    auto config = random_config(rng, qp);
    auto before = check_feasibility(qp, config).status;

    // One row rescaled.
    const std::size_t pick = rng() % qp.constraint_count();
    const double s = scale(rng);
    Matrix a2 = qp.a();
    Vector b2 = qp.b();
    for (std::size_t i = 0; i < qp.dimension(); ++i) a2(i, pick) *= s;
    b2[pick] *= s;
    QpInstance rowscaled(qp.h(), qp.f(), a2, b2, qp.kinds());
    CHECK(check_feasibility(rowscaled, config).status == before);

    // Whole rhs rescaled.
    const double t = scale(rng);
    Vector b3 = qp.b();
    for (std::size_t j = 0; j < b3.size(); ++j) b3[j] *= t;
    QpInstance rhsscaled(qp.h(), qp.f(), qp.a(), b3, qp.kinds());
    CHECK(check_feasibility(rhsscaled, config).status == before);
  }
}

TEST_CASE("relaxing an enforced bound preserves feasibility") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> bump(0.0, 3.0);
  int feasible_seen = 0;
  for (int trial = 0; trial < 120 && feasible_seen < 40; ++trial) {
    auto qp = random_qp(rng, 2 + trial % 2, 3 + trial % 5);
    auto config = random_config(rng, qp);
    if (!check_feasibility(qp, config).feasible()) continue;
    ++feasible_seen;

    std::vector<std::size_t> plus;
    for (std::size_t j = 0; j < config.size(); ++j) {
      if (config.sign(j) > 0) plus.push_back(j);
    }
    if (plus.empty()) continue;
    Vector b2 = qp.b();
    b2[plus[rng() % plus.size()]] += bump(rng);
    QpInstance relaxed(qp.h(), qp.f(), qp.a(), b2, qp.kinds());
    CHECK(check_feasibility(relaxed, config).feasible());
  }
  CHECK(feasible_seen >= 30);
}

TEST_CASE("unnormalized cone programs are zero or unbounded, never in between") {
  std::mt19937_64 rng(141421);
  int unbounded_seen = 0, zero_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto qp = random_qp(rng, 1 + trial % 3, 2 + trial % 8);
    auto config = random_config(rng, qp);
    auto out = solve_standard_lp(build_cone_lp(qp, config));
    if (out.status == LpStatus::Optimal) {
      CHECK(std::abs(out.optimal_value) <= 1e-7);
      ++zero_seen;
    } else {
      REQUIRE(out.status == LpStatus::Unbounded);
      CHECK_FALSE(check_feasibility(qp, config).feasible());
      ++unbounded_seen;
    }
  }
  CHECK(unbounded_seen > 10);
  CHECK(zero_seen > 10);
}

TEST_CASE("a disregarded constraint equals enforcing its negation") {
  std::mt19937_64 rng(577215);
  for (int trial = 0; trial < 80; ++trial) {
    auto qp = random_qp(rng, 1 + trial % 3, 2 + trial % 8);
    auto config = random_config(rng, qp);

    Matrix a2 = qp.a();
    Vector b2 = qp.b();
    for (std::size_t j : config.minus_indices()) {
      for (std::size_t i = 0; i < qp.dimension(); ++i) a2(i, j) = -a2(i, j);
      b2[j] = -b2[j];
    }
    QpInstance negated(qp.h(), qp.f(), a2, b2,
                       std::vector<ConstraintKind>(qp.constraint_count(),
                                                   ConstraintKind::Soft));
    auto lhs = check_feasibility(qp, config);
    auto rhs = check_feasibility(negated, Configuration::all_plus(qp.constraint_count()));
    CHECK(lhs.status == rhs.status);
  }
}

TEST_CASE("constant constraints are certified or dropped up front") {
  SUBCASE("an unsatisfiable constant row yields a unit certificate") {
    auto qp = make_qp(Matrix{{0.0, 1.0}, {0.0, 0.0}}, Vector{-1.0, 1.0}, "ss");
    auto v = check_feasibility(qp, Configuration::all_plus(2));
    REQUIRE_FALSE(v.feasible());
    CHECK(v.certificate[0] == doctest::Approx(1.0));
    CHECK(v.certificate[1] == doctest::Approx(0.0));
    check_certificate(qp, Configuration::all_plus(2), v);
    CHECK_FALSE(phase1_check(qp, Configuration::all_plus(2)).feasible());
  }
  SUBCASE("flipping a satisfied constant row violates it") {
    auto qp = make_qp(Matrix{{0.0, 1.0}, {0.0, 0.0}}, Vector{1.0, 1.0}, "ss");
    CHECK(check_feasibility(qp, Configuration::all_plus(2)).feasible());
    auto v = check_feasibility(qp, Configuration({-1, 1}));
    REQUIRE_FALSE(v.feasible());
    CHECK(v.certificate[0] == doctest::Approx(-1.0));
    check_certificate(qp, Configuration({-1, 1}), v);
  }
  SUBCASE("all columns constant and satisfied is trivially feasible") {
    auto qp = make_qp(Matrix(2, 2), Vector{1.0, 2.0}, "ss");
    auto v = check_feasibility(qp, Configuration::all_plus(2));
    CHECK(v.feasible());
    CHECK(v.cone_trivial);
  }
}

TEST_CASE("validate_hard runs the check on the hard slice only") {
  auto contradictory =
      make_qp(Matrix{{1.0, -1.0, 1.0}}, Vector{0.0, -1.0, 5.0}, "hhs");
  CHECK_FALSE(validate_hard(contradictory).feasible());

  auto fine = make_qp(Matrix{{1.0, -1.0, 1.0}}, Vector{0.0, -1.0, 5.0}, "hss");
  // Hard slice is u <= 0 alone; the soft contradiction does not matter.
  CHECK(validate_hard(fine).feasible());

  auto all_soft = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, -2.0}, "ss");
  auto v = validate_hard(all_soft);
  CHECK(v.feasible());
  CHECK(v.cone_trivial);
}

TEST_CASE("construction and configuration validation") {
  CHECK_THROWS_AS(Configuration({0, 1}), InvalidProblem);
  CHECK_THROWS_AS(Configuration({2}), InvalidProblem);

  auto qp = make_qp(Matrix{{1.0, -1.0}}, Vector{1.0, 0.0}, "hs");
  CHECK_THROWS_AS(check_feasibility(qp, Configuration({-1, 1})), InvalidProblem);
  CHECK_THROWS_AS(check_feasibility(qp, Configuration::all_plus(3)), InvalidProblem);
  CHECK_NOTHROW(check_feasibility(qp, Configuration({1, -1})));

  CHECK_THROWS_AS(QpInstance(Matrix{{1.0, 2.0}, {2.0, 1.0}}, Vector(2),
                             Matrix(2, 1, {1.0, 0.0}), Vector{1.0},
                             kinds_from("s")),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(QpInstance(Matrix{{1.0, 0.5}, {0.0, 1.0}}, Vector(2),
                             Matrix(2, 1, {1.0, 0.0}), Vector{1.0},
                             kinds_from("s")),
                  InvalidProblem);
  CHECK_THROWS_AS(QpInstance(Matrix::identity(2), Vector(2), Matrix(1, 1, {1.0}),
                             Vector{1.0}, kinds_from("s")),
                  InvalidProblem);
  CHECK_THROWS_AS(QpInstance(Matrix::identity(2), Vector(2), Matrix(2, 2, {1., 0., 0., 1.}),
                             Vector{1.0}, kinds_from("s")),
                  InvalidProblem);
}

TEST_CASE("sub-instance extraction preserves order and kinds") {
  auto qp = make_qp(Matrix{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}}, Vector{7.0, 8.0, 9.0}, "hsh");
  auto sub = qp.with_constraints({2, 0});
  CHECK(sub.constraint_count() == 2);
  CHECK(sub.a()(0, 0) == 3.0);
  CHECK(sub.a()(1, 1) == 4.0);
  CHECK(sub.b()[0] == 9.0);
  CHECK(sub.kind(0) == ConstraintKind::Hard);
  CHECK_THROWS_AS(qp.with_constraints({5}), InvalidProblem);
}
