#pragma once

#include <cstddef>
#include <vector>

#include "qpfeas/feasibility.hpp"

namespace qpfeas {

/// Exhaustive enumeration walks every vertex of the configuration graph,
/// so both searches refuse instances with more soft constraints than this.
inline constexpr std::size_t kMaxSearchSoft = 20;

/// The search space: sign configurations with hard entries pinned at +1.
/// Vertices are implicit; two of them are adjacent when their patterns
/// differ in exactly one entry (‖P_i − P_j‖₁ = 2).
struct ConfigGraph {
  std::size_t soft_count = 0;

  std::size_t vertex_count() const { return std::size_t{1} << soft_count; }
  static bool adjacent(const Configuration& p, const Configuration& q);
};

/// Number of +1 entries in the configuration.
std::size_t level(const Configuration& config);

/// The configurations one soft-entry flip away, in constraint-index order;
/// hard entries are never touched. Exactly one entry per soft constraint.
std::vector<Configuration> neighbors(const Configuration& config,
                                     const std::vector<ConstraintKind>& kinds);

struct ConfigTraceEntry {
  Configuration config;
  FeasibilityVerdict verdict;
};

struct ConfigSearchResult {
  Configuration chosen;
  std::size_t level = 0;
  /// Feasibility checks actually performed; revisits hit a memo and are
  /// not recounted.
  std::size_t evaluations = 0;
  /// Every distinct configuration evaluated, in first-evaluation order.
  std::vector<ConfigTraceEntry> trace;
};

/// Exhaustive search: evaluates all 2^{C_s} configurations and returns one
/// of maximal level. Equal levels resolve to the lexicographically
/// greatest sign pattern (+1 beats −1, index 0 most significant), so the
/// result is deterministic. `workers` caps the evaluation threads; 0 picks
/// a value from the hardware, and any choice yields identical results.
/// Throws NoFeasibleConfiguration when every configuration is infeasible
/// and InvalidProblem when the soft count exceeds kMaxSearchSoft.
ConfigSearchResult greedy_maxfs(const QpInstance& qp, unsigned workers = 0);

/// Monotone descent from `start` (default all-(+1)): while the current
/// configuration is infeasible, evaluate the configurations reached by
/// disregarding one still-enforced soft constraint and move to the
/// lowest-index feasible one, or to the lowest-index one unconditionally
/// when none is feasible. Never re-enables a disregarded constraint, so it
/// terminates within C_s steps but may settle below the greedy level.
/// Throws NoFeasibleConfiguration when the descent bottoms out with every
/// soft constraint disregarded and the system still infeasible.
ConfigSearchResult heuristic_maxfs(const QpInstance& qp);
ConfigSearchResult heuristic_maxfs(const QpInstance& qp, const Configuration& start);

}  // namespace qpfeas
