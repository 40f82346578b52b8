#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpfeas/scenario.hpp"

namespace qpfeas {

/// The two feasibility tests raced on every grid cell.
enum class BenchMethod { DualLp, Phase1 };

std::string method_name(BenchMethod method);

struct GridRecord {
  std::size_t m = 0;
  std::size_t c = 0;
  std::size_t trial = 0;
  BenchMethod method = BenchMethod::DualLp;
  FeasibilityStatus status = FeasibilityStatus::Feasible;
  /// Monotonic-clock time around the feasibility call alone; instance
  /// generation is excluded.
  std::int64_t wall_time_ns = 0;

  bool operator==(const GridRecord&) const = default;
};

/// Seed for one grid task, a pure function of (seed, m, c, trial), so any
/// execution order reproduces identical instances.
std::uint64_t task_seed(std::uint64_t seed, std::size_t m, std::size_t c,
                        std::size_t trial);

/// Runs every (m, C, trial) cell of the grid with both methods on the
/// identical instance under the all-(+1) configuration. Records come back
/// sorted by (m, C, trial, method); value lists are iterated in ascending
/// order.
std::vector<GridRecord> run_grid(const GridSpec& spec);

void write_grid_csv(std::ostream& out, const std::vector<GridRecord>& records);
/// Inverse of write_grid_csv; throws InvalidProblem on malformed input.
std::vector<GridRecord> read_grid_csv(std::istream& in);

struct CellSummary {
  std::size_t m = 0;
  std::size_t c = 0;
  BenchMethod method = BenchMethod::DualLp;
  double mean_ns = 0.0;
  double median_ns = 0.0;
  std::size_t trials = 0;
};

/// Per-(m, C, method) mean and median of the wall times, in record order.
std::vector<CellSummary> summarize(const std::vector<GridRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells);

/// Self-contained heatmap for one method: C on the x axis, m on the y
/// axis, mean time in seconds color-mapped on a logarithmic scale with a
/// linear two-color ramp. No external references; every cell carries its
/// value as a tooltip.
std::string heatmap_svg(const std::vector<CellSummary>& cells, BenchMethod method);

}  // namespace qpfeas
