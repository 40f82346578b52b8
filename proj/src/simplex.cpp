#include "qpfeas/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qpfeas/errors.hpp"

namespace qpfeas {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieBand = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr std::size_t kRefactorEvery = 1000;
constexpr std::size_t kRefreshEvery = 100;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Dense revised simplex over column-major storage. The basis inverse is
/// held explicitly and kept current through eta updates, with periodic
/// refactorization from scratch.
class Engine {
 public:
  Engine(const Matrix& m, const Vector& rhs)
      : k_(m.rows()), n_struct_(m.cols()), n_total_(m.cols()) {
    cols_.resize(n_total_ * k_);
    for (std::size_t i = 0; i < k_; ++i) {
      const double* row = m.row_data(i);
      for (std::size_t j = 0; j < n_total_; ++j) cols_[j * k_ + i] = row[j];
    }
    r_.assign(rhs.entries().begin(), rhs.entries().end());
    row_negated_.assign(k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (r_[i] < 0.0) {
        r_[i] = -r_[i];
        row_negated_[i] = 1;
        for (std::size_t j = 0; j < n_total_; ++j) cols_[j * k_ + i] = -cols_[j * k_ + i];
      }
    }
    rhs_scale_ = 1.0;
    for (double v : r_) rhs_scale_ = std::max(rhs_scale_, 1.0 + v);
  }

  std::size_t rows() const { return k_; }
  std::size_t structural_count() const { return n_struct_; }
  std::size_t artificial_count() const { return n_total_ - n_struct_; }
  std::size_t iterations() const { return iterations_; }
  bool row_negated(std::size_t i) const { return row_negated_[i] != 0; }

  double column_entry(std::size_t col, std::size_t row) const { return cols_[col * k_ + row]; }

  /// Assigns each row a singleton column with positive coefficient where
  /// one exists. Returns per-row column index, kNone for uncovered rows.
  std::vector<std::size_t> crash_columns() const {
    std::vector<std::size_t> nnz(n_struct_, 0);
    std::vector<std::size_t> only_row(n_struct_, 0);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      const double* col = cols_.data() + j * k_;
      for (std::size_t i = 0; i < k_; ++i) {
        if (col[i] != 0.0) {
          ++nnz[j];
          only_row[j] = i;
        }
      }
    }
    std::vector<std::size_t> pick(k_, kNone);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (nnz[j] != 1) continue;
      const std::size_t i = only_row[j];
      if (pick[i] == kNone && cols_[j * k_ + i] > 0.0) pick[i] = j;
    }
    return pick;
  }

  /// Appends identity columns for the listed rows and returns their
  /// column indices.
  std::vector<std::size_t> add_artificials(const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> ids;
    ids.reserve(rows.size());
    for (std::size_t i : rows) {
      cols_.insert(cols_.end(), k_, 0.0);
      cols_[(n_total_)*k_ + i] = 1.0;
      ids.push_back(n_total_);
      ++n_total_;
    }
    return ids;
  }

  /// Installs a basis of one column per row; every column must be a
  /// singleton on its row, so the basis inverse starts diagonal.
  void install_diagonal_basis(const std::vector<std::size_t>& per_row) {
    basis_ = per_row;
    in_basis_.assign(n_total_, 0);
    banned_.assign(n_total_, 0);
    binv_.assign(k_ * k_, 0.0);
    x_b_.assign(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      in_basis_[basis_[i]] = 1;
      const double coef = cols_[basis_[i] * k_ + i];
      binv_[i * k_ + i] = 1.0 / coef;
      x_b_[i] = r_[i] / coef;
    }
    bland_ = false;
    degenerate_run_ = 0;
    pivots_since_refactor_ = 0;
    pivots_since_refresh_ = 0;
  }

  void ban_column(std::size_t j) { banned_[j] = 1; }

  void set_objective(std::vector<double> c) { obj_ = std::move(c); }

  double objective_value() const {
    double v = 0.0;
    for (std::size_t i = 0; i < k_; ++i) v += obj_[basis_[i]] * x_b_[i];
    return v;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  double basic_value(std::size_t row) const { return x_b_[row]; }

  /// Multipliers y = c_B · B⁻¹ in the engine's (sign-normalized) row space.
  std::vector<double> multipliers() const {
    std::vector<double> y(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      const double cb = obj_[basis_[i]];
      if (cb == 0.0) continue;
      const double* brow = binv_.data() + i * k_;
      for (std::size_t j = 0; j < k_; ++j) y[j] += cb * brow[j];
    }
    return y;
  }

  struct RunResult {
    bool unbounded = false;
    std::size_t entering = kNone;
    std::vector<double> entering_ftran;
  };

  /// Pivots until no reduced cost exceeds tolerance (returns with
  /// unbounded=false) or an improving column has no blocking row.
  RunResult run(std::size_t iteration_cap) {
    while (true) {
      if (iterations_ >= iteration_cap) {
        throw NumericalBreakdown("simplex iteration cap exceeded after " +
                                 std::to_string(iterations_) + " pivots");
      }
      maybe_refactor();
      const std::vector<double> y = multipliers();
      const std::size_t entering = price(y);
      if (entering == kNone) return {};

      std::vector<double> w = ftran(entering);
      const std::size_t leave = ratio_test(w);
      if (leave == kNone) return {true, entering, std::move(w)};
      pivot(entering, leave, w);
    }
  }

  /// Forces basic artificial columns out of the basis with degenerate
  /// pivots on structural columns. Rows are independent after presolve,
  /// so a usable pivot entry always exists.
  void evict_artificials() {
    for (std::size_t i = 0; i < k_; ++i) {
      if (basis_[i] < n_struct_) continue;
      const double* brow = binv_.data() + i * k_;
      std::size_t best = kNone;
      double best_abs = 0.0;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (in_basis_[j]) continue;
        const double* col = cols_.data() + j * k_;
        double alpha = 0.0;
        for (std::size_t t = 0; t < k_; ++t) alpha += brow[t] * col[t];
        if (std::abs(alpha) > best_abs) {
          best_abs = std::abs(alpha);
          best = j;
        }
      }
      if (best == kNone || best_abs <= kPivotTol) {
        throw NumericalBreakdown("could not drive an artificial variable out of the basis");
      }
      // The artificial sits at phase-1 noise level; zeroing it keeps the
      // swap exactly degenerate even when the pivot entry is negative.
      x_b_[i] = 0.0;
      std::vector<double> w = ftran(best);
      pivot(best, i, w);
    }
  }

  bool any_artificial_basic() const {
    for (std::size_t v : basis_)
      if (v >= n_struct_) return true;
    return false;
  }

  /// Structural solution with slightly negative basics snapped to zero.
  std::vector<double> structural_solution() {
    refresh_basics();
    std::vector<double> x(n_struct_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (basis_[i] >= n_struct_) continue;
      double v = x_b_[i];
      if (v < 0.0 && v > -kReducedCostTol) v = 0.0;
      x[basis_[i]] = v;
    }
    return x;
  }

 private:
  std::size_t price(const std::vector<double>& y) const {
    std::size_t best = kNone;
    double best_d = kReducedCostTol;
    for (std::size_t j = 0; j < n_total_; ++j) {
      if (in_basis_[j] || banned_[j]) continue;
      const double* col = cols_.data() + j * k_;
      double d = obj_[j];
      for (std::size_t i = 0; i < k_; ++i) d -= y[i] * col[i];
      if (bland_) {
        if (d > kReducedCostTol) return j;
      } else if (d > best_d) {
        best_d = d;
        best = j;
      }
    }
    return best;
  }

  std::vector<double> ftran(std::size_t col) const {
    const double* c = cols_.data() + col * k_;
    std::vector<double> w(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      const double* brow = binv_.data() + i * k_;
      double s = 0.0;
      for (std::size_t t = 0; t < k_; ++t) s += brow[t] * c[t];
      w[i] = s;
    }
    return w;
  }

  /// Variable ordering used by the leaving rule: artificials first so
  /// they drain out of the basis, then by index.
  std::size_t leave_key(std::size_t row) const {
    const std::size_t v = basis_[row];
    return v >= n_struct_ ? v - n_struct_ : v + n_total_;
  }

  std::size_t ratio_test(const std::vector<double>& w) const {
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k_; ++i) {
      if (w[i] <= kPivotTol) continue;
      theta = std::min(theta, std::max(x_b_[i], 0.0) / w[i]);
    }
    if (!std::isfinite(theta)) return kNone;

    std::size_t leave = kNone;
    double best_pivot = 0.0;
    std::size_t best_key = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < k_; ++i) {
      if (w[i] <= kPivotTol) continue;
      if (std::max(x_b_[i], 0.0) / w[i] > theta + kRatioTieBand) continue;
      if (bland_) {
        if (leave_key(i) < best_key) {
          best_key = leave_key(i);
          leave = i;
        }
      } else if (w[i] > best_pivot ||
                 (w[i] == best_pivot && leave_key(i) < best_key)) {
        best_pivot = w[i];
        best_key = leave_key(i);
        leave = i;
      }
    }
    return leave;
  }

  void pivot(std::size_t entering, std::size_t leave, const std::vector<double>& w) {
    const double theta = std::max(x_b_[leave], 0.0) / w[leave];
    const std::size_t leaving_var = basis_[leave];

    double* lrow = binv_.data() + leave * k_;
    const double inv = 1.0 / w[leave];
    for (std::size_t t = 0; t < k_; ++t) lrow[t] *= inv;
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == leave || w[i] == 0.0) continue;
      double* row = binv_.data() + i * k_;
      const double f = w[i];
      for (std::size_t t = 0; t < k_; ++t) row[t] -= f * lrow[t];
    }
    for (std::size_t i = 0; i < k_; ++i) x_b_[i] -= theta * w[i];
    x_b_[leave] = theta;

    in_basis_[leaving_var] = 0;
    in_basis_[entering] = 1;
    basis_[leave] = entering;
    if (leaving_var >= n_struct_) banned_[leaving_var] = 1;

    ++iterations_;
    ++pivots_since_refactor_;
    ++pivots_since_refresh_;
    if (theta < kDegenerateStep) {
      if (++degenerate_run_ > 3 * (n_total_ + k_)) bland_ = true;
    } else {
      degenerate_run_ = 0;
    }
  }

  void refresh_basics() {
    for (std::size_t i = 0; i < k_; ++i) {
      const double* brow = binv_.data() + i * k_;
      double s = 0.0;
      for (std::size_t t = 0; t < k_; ++t) s += brow[t] * r_[t];
      x_b_[i] = s;
    }
    pivots_since_refresh_ = 0;
  }

  void maybe_refactor() {
    if (pivots_since_refactor_ >= kRefactorEvery) {
      Matrix b(k_, k_);
      for (std::size_t l = 0; l < k_; ++l) {
        const double* col = cols_.data() + basis_[l] * k_;
        for (std::size_t i = 0; i < k_; ++i) b(i, l) = col[i];
      }
      LuDecomposition lu = [&] {
        try {
          return LuDecomposition::factor(b);
        } catch (const SingularMatrix&) {
          throw NumericalBreakdown("basis matrix became singular during refactorization");
        }
      }();
      Vector e(k_);
      for (std::size_t j = 0; j < k_; ++j) {
        e[j] = 1.0;
        Vector col = lu.solve(e);
        for (std::size_t i = 0; i < k_; ++i) binv_[i * k_ + j] = col[i];
        e[j] = 0.0;
      }
      pivots_since_refactor_ = 0;
      refresh_basics();
    } else if (pivots_since_refresh_ >= kRefreshEvery) {
      refresh_basics();
    }
  }

  std::size_t k_;
  std::size_t n_struct_;
  std::size_t n_total_;
  std::vector<double> cols_;
  std::vector<double> r_;
  std::vector<char> row_negated_;
  double rhs_scale_ = 1.0;

  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  std::vector<char> banned_;
  std::vector<double> binv_;
  std::vector<double> x_b_;
  std::vector<double> obj_;

  bool bland_ = false;
  std::size_t degenerate_run_ = 0;
  std::size_t pivots_since_refactor_ = 0;
  std::size_t pivots_since_refresh_ = 0;
  std::size_t iterations_ = 0;
};

void check_shapes(const StandardLp& lp) {
  if (lp.objective.size() != lp.eq_matrix.cols()) {
    throw InvalidProblem("objective length does not match column count");
  }
  if (lp.eq_rhs.size() != lp.eq_matrix.rows()) {
    throw InvalidProblem("rhs length does not match row count");
  }
}

/// Indices of a maximal independent row subset, ascending. Throws
/// InconsistentRows when a dependent row has a conflicting rhs.
std::vector<std::size_t> independent_rows(const StandardLp& lp) {
  const std::size_t k = lp.eq_matrix.rows();
  const std::size_t n = lp.eq_matrix.cols();

  std::vector<std::vector<double>> aug(k, std::vector<double>(n + 1));
  std::vector<double> row_scale(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug[i][j] = lp.eq_matrix(i, j);
      row_scale[i] = std::max(row_scale[i], std::abs(aug[i][j]));
    }
    aug[i][n] = lp.eq_rhs[i];
  }
  double rhs_norm = 0.0;
  for (double v : lp.eq_rhs) rhs_norm = std::max(rhs_norm, std::abs(v));

  std::vector<std::size_t> orig(k);
  std::iota(orig.begin(), orig.end(), 0);

  std::size_t rank = 0;
  std::vector<std::size_t> kept;
  for (std::size_t col = 0; col < n && rank < k; ++col) {
    std::size_t piv = rank;
    for (std::size_t i = rank + 1; i < k; ++i) {
      if (std::abs(aug[i][col]) > std::abs(aug[piv][col])) piv = i;
    }
    const double scale = std::max(row_scale[orig[piv]], 1.0);
    if (std::abs(aug[piv][col]) < 1e-10 * scale) continue;
    std::swap(aug[rank], aug[piv]);
    std::swap(orig[rank], orig[piv]);
    kept.push_back(orig[rank]);
    const double inv = 1.0 / aug[rank][col];
    for (std::size_t i = rank + 1; i < k; ++i) {
      const double f = aug[i][col] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= n; ++j) aug[i][j] -= f * aug[rank][j];
    }
    ++rank;
  }
  for (std::size_t i = rank; i < k; ++i) {
    if (std::abs(aug[i][n]) > 1e-9 * (1.0 + rhs_norm)) {
      throw InconsistentRows("row " + std::to_string(orig[i]) +
                             " reduces to 0 = " + std::to_string(aug[i][n]));
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

StandardLp select_rows(const StandardLp& lp, const std::vector<std::size_t>& kept) {
  const std::size_t n = lp.eq_matrix.cols();
  StandardLp out;
  out.objective = lp.objective;
  Matrix m(kept.size(), n);
  Vector r(kept.size());
  for (std::size_t t = 0; t < kept.size(); ++t) {
    for (std::size_t j = 0; j < n; ++j) m(t, j) = lp.eq_matrix(kept[t], j);
    r[t] = lp.eq_rhs[kept[t]];
  }
  out.eq_matrix = std::move(m);
  out.eq_rhs = std::move(r);
  return out;
}

LpOutcome solve_reduced(const StandardLp& lp, const std::vector<std::size_t>& kept_rows,
                        std::size_t original_row_count) {
  const std::size_t k = lp.eq_matrix.rows();
  const std::size_t n = lp.eq_matrix.cols();

  Engine eng(lp.eq_matrix, lp.eq_rhs);
  const std::size_t cap = std::max<std::size_t>(10000, 200 * (n + k));

  double rhs_norm = 0.0;
  for (double v : lp.eq_rhs) rhs_norm = std::max(rhs_norm, std::abs(v));

  std::vector<std::size_t> per_row = eng.crash_columns();
  std::vector<std::size_t> uncovered;
  for (std::size_t i = 0; i < k; ++i) {
    if (per_row[i] == kNone) uncovered.push_back(i);
  }

  bool need_phase1 = !uncovered.empty();
  if (need_phase1) {
    std::vector<std::size_t> art = eng.add_artificials(uncovered);
    for (std::size_t t = 0; t < uncovered.size(); ++t) per_row[uncovered[t]] = art[t];
  }
  eng.install_diagonal_basis(per_row);

  if (need_phase1) {
    std::vector<double> c1(n + eng.artificial_count(), 0.0);
    for (std::size_t j = n; j < c1.size(); ++j) c1[j] = -1.0;
    eng.set_objective(std::move(c1));
    eng.run(cap);
    if (eng.objective_value() < -kReducedCostTol * (1.0 + rhs_norm)) {
      LpOutcome out;
      out.status = LpStatus::InfeasibleLp;
      out.iterations = eng.iterations();
      return out;
    }
    if (eng.any_artificial_basic()) eng.evict_artificials();
    for (std::size_t j = n; j < n + eng.artificial_count(); ++j) eng.ban_column(j);
  }

  std::vector<double> c2(n + eng.artificial_count(), 0.0);
  std::copy(lp.objective.entries().begin(), lp.objective.entries().end(), c2.begin());
  eng.set_objective(std::move(c2));
  Engine::RunResult res = eng.run(cap);

  LpOutcome out;
  out.iterations = eng.iterations();

  if (res.unbounded) {
    out.status = LpStatus::Unbounded;
    std::vector<double> ray(n, 0.0);
    ray[res.entering] = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t v = eng.basis()[i];
      if (v < n && -res.entering_ftran[i] > 0.0) ray[v] = -res.entering_ftran[i];
    }
    double scale = 0.0;
    for (double v : ray) scale = std::max(scale, v);
    for (double& v : ray) v /= scale;
    out.ray = Vector(std::move(ray));
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x = Vector(eng.structural_solution());
  out.optimal_value = dot(lp.objective, out.x);

  std::vector<double> y = eng.multipliers();
  std::vector<double> duals(original_row_count, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    duals[kept_rows[i]] = eng.row_negated(i) ? -y[i] : y[i];
  }
  out.duals = Vector(std::move(duals));
  return out;
}

}  // namespace

StandardLp presolve_rows(const StandardLp& lp) {
  check_shapes(lp);
  return select_rows(lp, independent_rows(lp));
}

LpOutcome solve_standard_lp(const StandardLp& lp) {
  check_shapes(lp);
  const std::size_t k = lp.eq_matrix.rows();
  const std::size_t n = lp.eq_matrix.cols();

  if (n == 0) {
    double rhs_norm = 0.0;
    for (double v : lp.eq_rhs) rhs_norm = std::max(rhs_norm, std::abs(v));
    LpOutcome out;
    if (rhs_norm > 1e-9) {
      out.status = LpStatus::InfeasibleLp;
    } else {
      out.status = LpStatus::Optimal;
      out.duals = Vector(std::vector<double>(k, 0.0));
    }
    return out;
  }

  // A complete singleton crash basis removes the need for both presolve
  // and phase 1; otherwise reduce to independent rows first so artificial
  // eviction cannot stall.
  {
    Engine probe(lp.eq_matrix, lp.eq_rhs);
    std::vector<std::size_t> per_row = probe.crash_columns();
    if (std::find(per_row.begin(), per_row.end(), kNone) == per_row.end()) {
      std::vector<std::size_t> all(k);
      std::iota(all.begin(), all.end(), 0);
      return solve_reduced(lp, all, k);
    }
  }

  std::vector<std::size_t> kept;
  try {
    kept = independent_rows(lp);
  } catch (const InconsistentRows&) {
    LpOutcome out;
    out.status = LpStatus::InfeasibleLp;
    return out;
  }
  if (kept.size() == k) return solve_reduced(lp, kept, k);
  return solve_reduced(select_rows(lp, kept), kept, k);
}

}  // namespace qpfeas
