#include "qpfeas/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qpfeas/errors.hpp"

namespace qpfeas {

QpInstance::QpInstance(Matrix h, Vector f, Matrix a, Vector b,
                       std::vector<ConstraintKind> kinds)
    : h_(std::move(h)), f_(std::move(f)), a_(std::move(a)), b_(std::move(b)),
      kinds_(std::move(kinds)) {
  const std::size_t m = f_.size();
  if (m == 0) throw InvalidProblem("decision dimension must be at least 1");
  if (h_.rows() != m || h_.cols() != m) {
    throw InvalidProblem("H must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  if (a_.rows() != m) throw InvalidProblem("A must have one row per decision variable");
  if (a_.cols() != b_.size() || kinds_.size() != b_.size()) {
    throw InvalidProblem("A columns, B entries, and constraint kinds must align");
  }
  cholesky_spd(h_);  // rejects asymmetric or non-PD H
}

std::vector<std::size_t> QpInstance::hard_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < kinds_.size(); ++j) {
    if (kinds_[j] == ConstraintKind::Hard) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> QpInstance::soft_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < kinds_.size(); ++j) {
    if (kinds_[j] == ConstraintKind::Soft) out.push_back(j);
  }
  return out;
}

QpInstance QpInstance::with_constraints(const std::vector<std::size_t>& keep) const {
  const std::size_t m = dimension();
  Matrix a(m, keep.size());
  Vector b(keep.size());
  std::vector<ConstraintKind> kinds(keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t) {
    const std::size_t j = keep[t];
    if (j >= constraint_count()) throw InvalidProblem("constraint index out of range");
    for (std::size_t i = 0; i < m; ++i) a(i, t) = a_(i, j);
    b[t] = b_[j];
    kinds[t] = kinds_[j];
  }
  return QpInstance(h_, f_, std::move(a), std::move(b), std::move(kinds));
}

Configuration::Configuration(std::vector<int> signs) {
  signs_.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidProblem("configuration entries must be +1 or -1");
    signs_.push_back(static_cast<signed char>(s));
  }
}

Configuration Configuration::all_plus(std::size_t count) {
  return Configuration(std::vector<int>(count, 1));
}

Configuration Configuration::flipped(const std::vector<std::size_t>& flip) const {
  Configuration out = *this;
  for (std::size_t j : flip) {
    if (j >= signs_.size()) throw InvalidProblem("flip index out of range");
    out.signs_[j] = static_cast<signed char>(-out.signs_[j]);
  }
  return out;
}

std::vector<std::size_t> Configuration::minus_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < signs_.size(); ++j) {
    if (signs_[j] < 0) out.push_back(j);
  }
  return out;
}

std::string Configuration::pattern() const {
  std::string s(signs_.size(), '+');
  for (std::size_t j = 0; j < signs_.size(); ++j) {
    if (signs_[j] < 0) s[j] = '-';
  }
  return s;
}

void validate_configuration(const QpInstance& qp, const Configuration& config) {
  if (config.size() != qp.constraint_count()) {
    throw InvalidProblem("configuration length does not match constraint count");
  }
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (qp.kind(j) == ConstraintKind::Hard && config.sign(j) != 1) {
      throw InvalidProblem("hard constraint " + std::to_string(j) +
                           " cannot be disregarded");
    }
  }
}

namespace {

/// Dual cone program over the selected constraint columns, optionally
/// with the Σμ = 1 cross-section row appended.
StandardLp dual_lp_over(const QpInstance& qp, const Configuration& config,
                        const std::vector<std::size_t>& cols, bool normalized) {
  const std::size_t m = qp.dimension();
  const std::size_t n = cols.size();
  const std::size_t k = normalized ? m + 1 : m;

  StandardLp lp;
  Vector c(n);
  Matrix eq(k, n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t j = cols[t];
    const double p = config.sign(j);
    c[t] = -qp.b()[j] * p;
    for (std::size_t i = 0; i < m; ++i) eq(i, t) = qp.a()(i, j) * p;
    if (normalized) eq(m, t) = 1.0;
  }
  Vector r(k);
  if (normalized) r[m] = 1.0;
  lp.objective = std::move(c);
  lp.eq_matrix = std::move(eq);
  lp.eq_rhs = std::move(r);
  return lp;
}

std::vector<std::size_t> all_columns(const QpInstance& qp) {
  std::vector<std::size_t> cols(qp.constraint_count());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return cols;
}

}  // namespace

StandardLp build_dual_lp(const QpInstance& qp, const Configuration& config) {
  validate_configuration(qp, config);
  return dual_lp_over(qp, config, all_columns(qp), true);
}

StandardLp build_cone_lp(const QpInstance& qp, const Configuration& config) {
  validate_configuration(qp, config);
  return dual_lp_over(qp, config, all_columns(qp), false);
}

FeasibilityVerdict check_feasibility(const QpInstance& qp, const Configuration& config) {
  validate_configuration(qp, config);
  const std::size_t m = qp.dimension();
  const std::size_t cc = qp.constraint_count();

  // A zero column is a constant constraint 0 ≤ P_j·B_j: either an
  // immediate unit certificate or a droppable variable of the cone.
  std::vector<std::size_t> cols;
  cols.reserve(cc);
  for (std::size_t j = 0; j < cc; ++j) {
    double col_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) col_norm = std::max(col_norm, std::abs(qp.a()(i, j)));
    if (col_norm > 0.0) {
      cols.push_back(j);
      continue;
    }
    const double violation = -config.sign(j) * qp.b()[j];
    if (violation > kFeasibilityTol) {
      FeasibilityVerdict out;
      out.status = FeasibilityStatus::Infeasible;
      Vector cert(cc);
      cert[j] = config.sign(j);
      out.certificate = std::move(cert);
      out.lp_optimum = violation;
      return out;
    }
  }

  FeasibilityVerdict out;
  if (cols.empty()) {
    out.cone_trivial = true;
    return out;
  }

  const LpOutcome lp = solve_standard_lp(dual_lp_over(qp, config, cols, true));
  if (lp.status == LpStatus::InfeasibleLp) {
    out.cone_trivial = true;
    return out;
  }
  if (lp.status == LpStatus::Unbounded) {
    throw NumericalBreakdown("normalized dual cone program reported unbounded");
  }

  Vector lambda(cc);
  double norm1 = 0.0;
  for (std::size_t t = 0; t < cols.size(); ++t) {
    lambda[cols[t]] = config.sign(cols[t]) * std::max(lp.x[t], 0.0);
    norm1 += std::abs(lambda[cols[t]]);
  }
  for (std::size_t j = 0; j < cc; ++j) lambda[j] /= norm1;
  const double gain = -dot(qp.b(), lambda);

  out.lp_optimum = lp.optimal_value;
  if (gain > kFeasibilityTol) {
    out.status = FeasibilityStatus::Infeasible;
    out.certificate = std::move(lambda);
  }
  return out;
}

FeasibilityVerdict phase1_check(const QpInstance& qp, const Configuration& config) {
  validate_configuration(qp, config);
  const std::size_t m = qp.dimension();
  const std::size_t cc = qp.constraint_count();

  FeasibilityVerdict out;
  if (cc == 0) return out;

  // Columns: u⁺ (m), u⁻ (m), violations z (C), slacks s (C).
  const std::size_t n = 2 * m + 2 * cc;
  StandardLp lp;
  Matrix eq(cc, n);
  Vector r(cc);
  for (std::size_t j = 0; j < cc; ++j) {
    const double p = config.sign(j);
    for (std::size_t i = 0; i < m; ++i) {
      const double g = p * qp.a()(i, j);
      eq(j, i) = g;
      eq(j, m + i) = -g;
    }
    eq(j, 2 * m + j) = -1.0;
    eq(j, 2 * m + cc + j) = 1.0;
    r[j] = p * qp.b()[j];
  }
  Vector c(n);
  for (std::size_t j = 0; j < cc; ++j) c[2 * m + j] = -1.0;
  lp.objective = std::move(c);
  lp.eq_matrix = std::move(eq);
  lp.eq_rhs = std::move(r);

  const LpOutcome res = solve_standard_lp(lp);
  if (res.status != LpStatus::Optimal) {
    throw NumericalBreakdown("phase-1 program must have a bounded optimum");
  }

  const double total_violation = -res.optimal_value;
  out.lp_optimum = total_violation;
  if (total_violation > kFeasibilityTol) {
    out.status = FeasibilityStatus::Infeasible;
    Vector z(cc);
    for (std::size_t j = 0; j < cc; ++j) z[j] = std::max(res.x[2 * m + j], 0.0);
    out.certificate = std::move(z);
  }
  return out;
}

bool verdicts_agree(const QpInstance& qp, const Configuration& config) {
  return check_feasibility(qp, config).status == phase1_check(qp, config).status;
}

FeasibilityVerdict validate_hard(const QpInstance& qp) {
  const std::vector<std::size_t> hard = qp.hard_indices();
  if (hard.empty()) {
    FeasibilityVerdict out;
    out.cone_trivial = true;
    return out;
  }
  const QpInstance slice = qp.with_constraints(hard);
  return check_feasibility(slice, Configuration::all_plus(hard.size()));
}

}  // namespace qpfeas
