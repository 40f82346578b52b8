#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qpfeas/feasibility.hpp"

namespace qpfeas {

/// Decimal rendering with 12 significant digits; all numeric text the
/// tools emit goes through here.
std::string fmt12(double value);

/// Parses a problem document:
///   { "m": 2,                      // decision dimension, required
///     "H": [[...], ...],           // m×m, optional, defaults to identity
///     "F": [...],                  // length m, optional, defaults to zeros
///     "constraints": [             // required; aᵀu ≤ b rows
///       {"a": [...], "b": 0.5, "kind": "hard"|"soft"}, ... ] }
/// Throws InvalidProblem naming the offending field, or the line for
/// syntax errors. `name` labels the source in diagnostics.
QpInstance load_problem(std::istream& in, const std::string& name);
QpInstance load_problem_file(const std::string& path);

/// Serializes an instance to the same schema (12 significant digits).
std::string problem_to_json(const QpInstance& qp);

/// Verdict document: {"status", "certificate", "lp_optimum",
/// "wall_time_ns"}; lp_optimum is null when no program had to be solved.
std::string verdict_to_json(const FeasibilityVerdict& verdict,
                            std::int64_t wall_time_ns);

}  // namespace qpfeas
