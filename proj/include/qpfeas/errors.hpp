#pragma once

#include <stdexcept>
#include <string>

namespace qpfeas {

/// Problem data violates a constructor invariant (non-finite entries,
/// dimension mismatch, bad hard/soft partition, malformed configuration).
class InvalidProblem : public std::invalid_argument {
 public:
  explicit InvalidProblem(const std::string& what) : std::invalid_argument(what) {}
};

/// LU elimination found no usable pivot.
class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

/// Cholesky hit a nonpositive diagonal pivot.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

/// Row presolve reduced an equality system to 0 = nonzero.
class InconsistentRows : public std::runtime_error {
 public:
  explicit InconsistentRows(const std::string& what) : std::runtime_error(what) {}
};

/// The simplex stalled beyond its iteration cap or lost the basis;
/// reported instead of guessing a status.
class NumericalBreakdown : public std::runtime_error {
 public:
  explicit NumericalBreakdown(const std::string& what) : std::runtime_error(what) {}
};

/// Instance is too large for the enumeration oracle.
class OutOfOracleRange : public std::invalid_argument {
 public:
  explicit OutOfOracleRange(const std::string& what) : std::invalid_argument(what) {}
};

/// The feasibility pattern required by the flip/delete equivalence
/// does not hold for the given instance and flip set.
class PremiseViolated : public std::runtime_error {
 public:
  explicit PremiseViolated(const std::string& what) : std::runtime_error(what) {}
};

/// Every admissible configuration is infeasible (the hard constraints
/// alone admit no point).
class NoFeasibleConfiguration : public std::runtime_error {
 public:
  explicit NoFeasibleConfiguration(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpfeas
