#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpfeas/feasibility.hpp"
#include "qpfeas/linalg.hpp"

namespace qpfeas {

/// Exact minimizer of uᵀHu + Fᵀu over the signed system
/// S(P)Aᵀu ≤ S(P)B, found by active-set enumeration.
struct QpSolution {
  Vector minimizer;
  /// One multiplier per signed constraint: zero when inactive,
  /// nonnegative when active; stationarity reads
  /// 2Hu⋆ + F + (A·S(P))λ = 0.
  Vector multipliers;
  std::vector<std::size_t> active_set;
  double objective = 0.0;
};

struct OracleDiagnostics {
  std::size_t candidates_tested = 0;
  std::size_t singular_skipped = 0;
  std::size_t valid_candidates = 0;
};

/// −½H⁻¹F, the minimizer ignoring all constraints.
Vector unconstrained_minimizer(const QpInstance& qp);

/// ω(u) = uᵀHu + Fᵀu.
double qp_objective(const QpInstance& qp, const Vector& u);

/// Lagrangian dual value of the signed problem at the given nonnegative
/// multipliers; never exceeds the objective of any feasible point.
double dual_value(const QpInstance& qp, const Configuration& config,
                  const Vector& multipliers);

/// Enumerates candidate active sets up to size min(m, C), solves each
/// equality-constrained KKT system, and keeps the feasible,
/// sign-consistent candidate with least objective (ties broken toward
/// the lexicographically smallest active set). Returns nullopt when the
/// constraint system itself is infeasible. Exponential in C, guarded to
/// m ≤ 12, C ≤ 24 (OutOfOracleRange beyond). Singular candidate systems
/// are skipped and counted in the diagnostics.
std::optional<QpSolution> solve_qp(const QpInstance& qp, const Configuration& config,
                                   OracleDiagnostics* diag = nullptr);

/// Solves the QP once with flip_set sign-negated and once with flip_set
/// deleted, returning whether the two minimizers agree within 1e−6.
/// Requires the all-(+1) configuration infeasible and the flipped one
/// feasible (PremiseViolated otherwise); flip_set must be soft.
bool lemma1_equivalence(const QpInstance& qp, const std::vector<std::size_t>& flip_set);

}  // namespace qpfeas
