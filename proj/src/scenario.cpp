#include "qpfeas/scenario.hpp"

#include <cmath>
#include <numbers>

#include "qpfeas/rng.hpp"

namespace qpfeas {

QpInstance random_instance(std::size_t m, std::size_t c, std::uint64_t seed) {
  const SplitMix64 rng{seed};
  Matrix a(m, c);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      a(i, j) = rng.normal(i * c + j);
    }
  }
  Vector b(c);
  for (std::size_t j = 0; j < c; ++j) {
    b[j] = rng.normal(m * c + j);
  }
  return QpInstance(Matrix::identity(m), Vector(m), std::move(a), std::move(b),
                    std::vector<ConstraintKind>(c, ConstraintKind::Soft));
}

TimedInstance cbf_scenario(double t) {
  constexpr std::size_t kSoft = 5;
  Matrix a(2, 4 + kSoft);
  Vector b(4 + kSoft);
  std::vector<ConstraintKind> kinds(4 + kSoft, ConstraintKind::Soft);

  // Box faces u₁ ≤ 1, −u₁ ≤ 1, u₂ ≤ 1, −u₂ ≤ 1.
  const double face[4][2] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (std::size_t j = 0; j < 4; ++j) {
    a(0, j) = face[j][0];
    a(1, j) = face[j][1];
    b[j] = 1.0;
    kinds[j] = ConstraintKind::Hard;
  }

  for (std::size_t j = 1; j <= kSoft; ++j) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(j) / 5.0 + 0.2 * t;
    const std::size_t col = 3 + j;
    a(0, col) = std::cos(theta);
    a(1, col) = std::sin(theta);
    b[col] = (j == 3 || j == 4) ? -2.0 : 0.5;
  }

  QpInstance instance(Matrix::identity(2), Vector{-1.0, -1.0}, std::move(a),
                      std::move(b), std::move(kinds));
  return {t, std::move(instance)};
}

}  // namespace qpfeas
