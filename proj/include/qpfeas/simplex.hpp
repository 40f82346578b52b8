#pragma once

#include <cstddef>

#include "qpfeas/linalg.hpp"

namespace qpfeas {

/// Standard-form linear program: maximize c·x subject to Mx = r, x ≥ 0.
struct StandardLp {
  Vector objective;
  Matrix eq_matrix;
  Vector eq_rhs;
};

enum class LpStatus { Optimal, Unbounded, InfeasibleLp };

struct LpOutcome {
  LpStatus status = LpStatus::InfeasibleLp;
  /// c·x at the final vertex (Optimal only).
  double optimal_value = 0.0;
  /// Primal solution (Optimal only).
  Vector x;
  /// Recession direction with ray ≥ 0, M·ray = 0, c·ray > 0, scaled to
  /// unit inf-norm (Unbounded only).
  Vector ray;
  /// Equality-row multipliers from the final basis (Optimal only). Rows
  /// removed as dependent during presolve carry 0.
  Vector duals;
  std::size_t iterations = 0;
};

/// Removes numerically dependent equality rows; the feasible set is
/// unchanged. Surviving rows keep their original data and order.
/// Throws InconsistentRows when elimination reduces a row to 0 = nonzero.
StandardLp presolve_rows(const StandardLp& lp);

/// Two-phase dense revised simplex. Dantzig pricing, switching to Bland's
/// rule after a run of degenerate pivots; unboundedness yields the ray of
/// the entering column. Throws NumericalBreakdown when the iteration cap
/// is exceeded.
LpOutcome solve_standard_lp(const StandardLp& lp);

}  // namespace qpfeas
