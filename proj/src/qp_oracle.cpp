#include "qpfeas/qp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qpfeas/errors.hpp"

namespace qpfeas {

namespace {

constexpr double kPrimalSlack = 1e-8;
constexpr double kMultiplierSlack = 1e-9;
constexpr double kTieBand = 1e-9;

struct Candidate {
  Vector u;
  Vector nu;  // one entry per active index, aligned with the set
  std::vector<std::size_t> active;
  double objective = 0.0;
};

/// Solves the equality-constrained KKT system for the given active set in
/// the signed geometry. Throws SingularMatrix for dependent sets.
Candidate solve_active(const QpInstance& qp, const Configuration& config,
                       const std::vector<std::size_t>& active) {
  const std::size_t m = qp.dimension();
  const std::size_t s = active.size();
  Matrix t(m + s, m + s);
  Vector rhs(m + s);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) t(i, j) = 2.0 * qp.h()(i, j);
    rhs[i] = -qp.f()[i];
  }
  for (std::size_t w = 0; w < s; ++w) {
    const std::size_t j = active[w];
    const double p = config.sign(j);
    for (std::size_t i = 0; i < m; ++i) {
      t(i, m + w) = p * qp.a()(i, j);
      t(m + w, i) = p * qp.a()(i, j);
    }
    rhs[m + w] = p * qp.b()[j];
  }
  const Vector sol = solve_linear(t, rhs);
  Candidate c;
  c.u = Vector(m);
  c.nu = Vector(s);
  for (std::size_t i = 0; i < m; ++i) c.u[i] = sol[i];
  for (std::size_t w = 0; w < s; ++w) c.nu[w] = sol[m + w];
  c.active = active;
  return c;
}

bool primal_feasible(const QpInstance& qp, const Configuration& config, const Vector& u) {
  for (std::size_t j = 0; j < qp.constraint_count(); ++j) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < qp.dimension(); ++i) lhs += qp.a()(i, j) * u[i];
    const double p = config.sign(j);
    if (p * lhs > p * qp.b()[j] + kPrimalSlack) return false;
  }
  return true;
}

}  // namespace

Vector unconstrained_minimizer(const QpInstance& qp) {
  const Matrix l = cholesky_spd(qp.h());
  Vector u = cholesky_solve(l, qp.f());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= -0.5;
  return u;
}

double qp_objective(const QpInstance& qp, const Vector& u) {
  return dot(u, matvec(qp.h(), u)) + dot(qp.f(), u);
}

double dual_value(const QpInstance& qp, const Configuration& config,
                  const Vector& multipliers) {
  validate_configuration(qp, config);
  if (multipliers.size() != qp.constraint_count()) {
    throw InvalidProblem("multiplier count does not match constraint count");
  }
  const std::size_t m = qp.dimension();
  Vector v = qp.f();
  double bterm = 0.0;
  for (std::size_t j = 0; j < qp.constraint_count(); ++j) {
    const double p = config.sign(j);
    for (std::size_t i = 0; i < m; ++i) v[i] += p * qp.a()(i, j) * multipliers[j];
    bterm += p * qp.b()[j] * multipliers[j];
  }
  const Vector hv = cholesky_solve(cholesky_spd(qp.h()), v);
  return -0.25 * dot(v, hv) - bterm;
}

std::optional<QpSolution> solve_qp(const QpInstance& qp, const Configuration& config,
                                   OracleDiagnostics* diag) {
  validate_configuration(qp, config);
  const std::size_t m = qp.dimension();
  const std::size_t cc = qp.constraint_count();
  if (m > 12 || cc > 24) {
    throw OutOfOracleRange("active-set enumeration is limited to m <= 12, C <= 24");
  }

  OracleDiagnostics local;
  OracleDiagnostics& d = diag ? *diag : local;
  d = OracleDiagnostics{};

  const std::size_t cap = std::min(m, cc);
  std::optional<Candidate> best;

  // Depth-first over index-increasing subsets visits candidate active
  // sets in lexicographic order, so the first of an objective tie is
  // already the lexicographically smallest.
  std::vector<std::size_t> stack;
  auto consider = [&](const std::vector<std::size_t>& active) {
    ++d.candidates_tested;
    Candidate c;
    try {
      c = solve_active(qp, config, active);
    } catch (const SingularMatrix&) {
      ++d.singular_skipped;
      return;
    }
    for (std::size_t w = 0; w < c.nu.size(); ++w) {
      if (c.nu[w] < -kMultiplierSlack) return;
    }
    if (!primal_feasible(qp, config, c.u)) return;
    ++d.valid_candidates;
    c.objective = qp_objective(qp, c.u);
    if (!best) {
      best = std::move(c);
      return;
    }
    const double band = kTieBand * (1.0 + std::abs(best->objective));
    if (c.objective < best->objective - band) {
      best = std::move(c);
    } else if (c.objective <= best->objective + band &&
               std::lexicographical_compare(c.active.begin(), c.active.end(),
                                            best->active.begin(), best->active.end())) {
      best = std::move(c);
    }
  };

  auto dfs = [&](auto&& self, std::size_t next) -> void {
    consider(stack);
    if (stack.size() == cap) return;
    for (std::size_t j = next; j < cc; ++j) {
      stack.push_back(j);
      self(self, j + 1);
      stack.pop_back();
    }
  };
  dfs(dfs, 0);

  if (!best) {
    if (!phase1_check(qp, config).feasible()) return std::nullopt;
    throw NumericalBreakdown(
        "no KKT candidate passed although the constraint system looks feasible");
  }

  QpSolution out;
  out.minimizer = std::move(best->u);
  out.objective = best->objective;
  out.active_set = std::move(best->active);
  Vector lam(cc);
  for (std::size_t w = 0; w < out.active_set.size(); ++w) {
    lam[out.active_set[w]] = std::max(0.0, best->nu[w]);
  }
  out.multipliers = std::move(lam);
  return out;
}

bool lemma1_equivalence(const QpInstance& qp, const std::vector<std::size_t>& flip_set) {
  for (std::size_t j : flip_set) {
    if (j >= qp.constraint_count() || qp.kind(j) != ConstraintKind::Soft) {
      throw InvalidProblem("flip set must consist of soft constraint indices");
    }
  }
  const Configuration plus = Configuration::all_plus(qp.constraint_count());
  const Configuration flipped = plus.flipped(flip_set);
  if (check_feasibility(qp, plus).feasible()) {
    throw PremiseViolated("the all-enforced configuration is already feasible");
  }
  if (!check_feasibility(qp, flipped).feasible()) {
    throw PremiseViolated("the flipped configuration is not feasible");
  }

  const std::optional<QpSolution> via_flip = solve_qp(qp, flipped);
  if (!via_flip) {
    throw NumericalBreakdown("flipped problem unsolved despite a feasible verdict");
  }

  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < qp.constraint_count(); ++j) {
    if (std::find(flip_set.begin(), flip_set.end(), j) == flip_set.end()) keep.push_back(j);
  }
  const QpInstance reduced = qp.with_constraints(keep);
  const std::optional<QpSolution> via_delete =
      solve_qp(reduced, Configuration::all_plus(keep.size()));
  if (!via_delete) {
    throw NumericalBreakdown("deleted problem unsolved although it relaxes a feasible one");
  }

  double gap = 0.0;
  for (std::size_t i = 0; i < qp.dimension(); ++i) {
    gap = std::max(gap, std::abs(via_flip->minimizer[i] - via_delete->minimizer[i]));
  }
  return gap <= 1e-6;
}

}  // namespace qpfeas
