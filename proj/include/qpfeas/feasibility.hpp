#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qpfeas/linalg.hpp"
#include "qpfeas/simplex.hpp"

namespace qpfeas {

/// Verdict threshold on the normalized dual optimum and on phase-1
/// violation sums. Certificates are scale-normalized, so the value is
/// dimensionless.
inline constexpr double kFeasibilityTol = 1e-7;

enum class ConstraintKind { Hard, Soft };

/// Convex QP data: minimize uᵀHu + Fᵀu subject to Aᵀu ≤ B, where
/// constraint j is the column A_j. Hard constraints must always be
/// enforced; soft ones may be disregarded by a configuration.
class QpInstance {
 public:
  QpInstance(Matrix h, Vector f, Matrix a, Vector b, std::vector<ConstraintKind> kinds);

  std::size_t dimension() const { return f_.size(); }
  std::size_t constraint_count() const { return b_.size(); }
  const Matrix& h() const { return h_; }
  const Vector& f() const { return f_; }
  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  ConstraintKind kind(std::size_t j) const { return kinds_[j]; }
  const std::vector<ConstraintKind>& kinds() const { return kinds_; }
  std::vector<std::size_t> hard_indices() const;
  std::vector<std::size_t> soft_indices() const;

  /// Sub-instance over the listed constraints, order preserved.
  QpInstance with_constraints(const std::vector<std::size_t>& keep) const;

 private:
  Matrix h_;
  Vector f_;
  Matrix a_;
  Vector b_;
  std::vector<ConstraintKind> kinds_;
};

/// Sign vector P ∈ {−1,+1}^C choosing, per constraint, whether it is
/// enforced as given (+1) or disregarded via the reversed inequality (−1).
class Configuration {
 public:
  explicit Configuration(std::vector<int> signs);
  static Configuration all_plus(std::size_t count);

  std::size_t size() const { return signs_.size(); }
  int sign(std::size_t j) const { return signs_[j]; }
  Configuration flipped(const std::vector<std::size_t>& flip) const;
  std::vector<std::size_t> minus_indices() const;
  /// Sign pattern such as "++-+".
  std::string pattern() const;

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<signed char> signs_;
};

/// Throws InvalidProblem unless config matches qp's constraint count and
/// keeps +1 on every hard index.
void validate_configuration(const QpInstance& qp, const Configuration& config);

enum class FeasibilityStatus { Feasible, Infeasible };

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::Feasible;
  /// Infeasible via check_feasibility: multiplier vector λ with
  /// Σ|λ_j| = 1, sign-conforming, Aλ ≈ 0, −B·λ above tolerance.
  /// Infeasible via phase1_check: the optimal violation magnitudes z.
  Vector certificate;
  /// Value of the LP actually solved; unset when no LP was needed.
  std::optional<double> lp_optimum;
  /// Feasible because the dual cone is {0} (empty LP cross-section).
  bool cone_trivial = false;

  bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

/// Standard-form encoding of the sign-constrained dual cone program under
/// the substitution μ_j = P_j·λ_j ≥ 0: objective c_j = −B_j·P_j, equality
/// rows (A·S(P))μ = 0 plus the normalization row Σμ = 1.
StandardLp build_dual_lp(const QpInstance& qp, const Configuration& config);

/// Same cone without the normalization row; its optimum is 0 or the LP is
/// unbounded, never a finite positive value. Diagnostic use.
StandardLp build_cone_lp(const QpInstance& qp, const Configuration& config);

/// Decides feasibility of {S(P)Aᵀu ≤ S(P)B} by boundedness of the dual
/// cone program, solved over the Σμ = 1 cross-section. An empty
/// cross-section means the cone is trivial and the system is feasible.
FeasibilityVerdict check_feasibility(const QpInstance& qp, const Configuration& config);

/// Classical phase-1 baseline: min 1ᵀz s.t. S(P)Aᵀu − z ≤ S(P)B, z ≥ 0,
/// feasible iff the optimum is at tolerance zero.
FeasibilityVerdict phase1_check(const QpInstance& qp, const Configuration& config);

/// True iff check_feasibility and phase1_check agree on the status.
bool verdicts_agree(const QpInstance& qp, const Configuration& config);

/// Feasibility of the hard-indexed slice alone (every search strategy
/// presumes it; this makes the assumption checkable).
FeasibilityVerdict validate_hard(const QpInstance& qp);

}  // namespace qpfeas
