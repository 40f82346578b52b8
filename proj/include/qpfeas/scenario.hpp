#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qpfeas/feasibility.hpp"

namespace qpfeas {

/// Benchmark grid: every (m, C) cell is run `trials` times per method.
struct GridSpec {
  std::vector<std::size_t> m_values = {2, 5, 10, 25, 50};
  std::vector<std::size_t> c_values = {10, 50, 100, 250, 500, 1000};
  std::size_t trials = 10;
  std::uint64_t seed = 0;
};

/// A snapshot of the time-varying scenario at one sampling instant.
struct TimedInstance {
  double time = 0.0;
  QpInstance instance;
};

/// Random benchmark instance: A and B entries are i.i.d. standard normals
/// from SplitMix64{seed} (A row-major at counters 0..mC−1, then B), H is
/// the identity, F is zero, and every constraint is soft. Identical
/// (m, c, seed) produce identical instances.
QpInstance random_instance(std::size_t m, std::size_t c, std::uint64_t seed);

/// Synthetic constraint-selection scenario over t ∈ [0, 10] s with m = 2:
/// four hard box faces |u₁| ≤ 1, |u₂| ≤ 1 (indices 0..3), then five soft
/// constraints (indices 4..8) with rows a_j = (cos θ_j, sin θ_j),
/// θ_j = 2πj/5 + 0.2t for j = 1..5 and right-hand sides 0.5 except
/// b₃ = b₄ = −2. Soft #3 and #4 demand a·u ≤ −2, which is out of reach
/// inside the box (the box minimum of a·u is −(|cos θ|+|sin θ|) ≥ −√2),
/// so every feasible configuration disregards them both; the other three
/// always admit u = 0. H is the identity, F = (−1, −1).
TimedInstance cbf_scenario(double t);

}  // namespace qpfeas
