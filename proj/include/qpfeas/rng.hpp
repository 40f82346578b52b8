#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qpfeas {

/// Counter-based randomness built on the splitmix64 output function: the
/// k-th draw is a pure function of (seed, k), so streams may be sampled in
/// any order, from any thread, with reproducible results. The 64-bit
/// stream is platform-independent; floating-point draws additionally
/// depend on the platform's libm rounding of log/cos/sin.
struct SplitMix64 {
  std::uint64_t seed = 0;

  /// k-th block of the stream; equals the (k+1)-th output of sequential
  /// splitmix64 started at `seed`.
  std::uint64_t bits(std::uint64_t k) const {
    std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform(std::uint64_t k) const {
    return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
  }

  /// k-th standard normal: Box-Muller over the uniform draws at counters
  /// 2⌊k/2⌋ and 2⌊k/2⌋+1, cosine branch for even k, sine for odd.
  double normal(std::uint64_t k) const {
    const std::uint64_t pair = k / 2;
    // Left draw shifted into (0, 1] so the logarithm stays finite.
    const double u1 = static_cast<double>((bits(2 * pair) >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(bits(2 * pair + 1) >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return k % 2 == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
  }
};

}  // namespace qpfeas
