#include "qpfeas/config_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "qpfeas/errors.hpp"

namespace qpfeas {

namespace {

void check_soft_limit(std::size_t soft_count) {
  if (soft_count > kMaxSearchSoft) {
    throw InvalidProblem("configuration search handles at most " +
                         std::to_string(kMaxSearchSoft) + " soft constraints, got " +
                         std::to_string(soft_count));
  }
}

/// Mask bit k set means soft constraint soft[k] is disregarded (−1).
Configuration mask_config(const std::vector<std::size_t>& soft, std::size_t count,
                          std::size_t mask) {
  std::vector<std::size_t> flips;
  for (std::size_t k = 0; k < soft.size(); ++k) {
    if ((mask >> k) & 1u) flips.push_back(soft[k]);
  }
  return Configuration::all_plus(count).flipped(flips);
}

/// True when `a` precedes `b` in pattern order (+1 beats −1, index 0 most
/// significant), i.e. `b` is the lexicographically greater configuration.
bool pattern_less(const Configuration& a, const Configuration& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.sign(j) != b.sign(j)) return a.sign(j) < b.sign(j);
  }
  return false;
}

/// Evaluates every mask in [0, total) and returns the trace in ascending
/// mask order. Work is split into contiguous chunks that threads may
/// process independently; stitching the chunks back in order keeps the
/// result identical for any worker count.
std::vector<ConfigTraceEntry> evaluate_all(const QpInstance& qp,
                                           const std::vector<std::size_t>& soft,
                                           std::size_t total, unsigned workers) {
  const std::size_t count = qp.constraint_count();
  auto evaluate_range = [&](std::size_t lo, std::size_t hi,
                            std::vector<ConfigTraceEntry>& out) {
    out.reserve(hi - lo);
    for (std::size_t mask = lo; mask < hi; ++mask) {
      Configuration config = mask_config(soft, count, mask);
      FeasibilityVerdict verdict = check_feasibility(qp, config);
      out.push_back({std::move(config), std::move(verdict)});
    }
  };

  std::size_t pool = workers != 0 ? workers : std::thread::hardware_concurrency();
  if (pool == 0) pool = 1;
  pool = std::min(pool, total / 8);

  if (pool <= 1) {
    std::vector<ConfigTraceEntry> trace;
    evaluate_range(0, total, trace);
    return trace;
  }

  std::vector<std::vector<ConfigTraceEntry>> parts(pool);
  std::vector<std::exception_ptr> failures(pool);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = total * c / pool;
    const std::size_t hi = total * (c + 1) / pool;
    try {
      evaluate_range(lo, hi, parts[c]);
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(pool - 1);
  for (std::size_t c = 1; c < pool; ++c) threads.emplace_back(run_chunk, c);
  run_chunk(0);
  for (auto& t : threads) t.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<ConfigTraceEntry> trace;
  trace.reserve(total);
  for (auto& part : parts) {
    for (auto& entry : part) trace.push_back(std::move(entry));
  }
  return trace;
}

}  // namespace

bool ConfigGraph::adjacent(const Configuration& p, const Configuration& q) {
  if (p.size() != q.size()) return false;
  std::size_t l1 = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    l1 += static_cast<std::size_t>(std::abs(p.sign(j) - q.sign(j)));
  }
  return l1 == 2;
}

std::size_t level(const Configuration& config) {
  std::size_t plus = 0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (config.sign(j) > 0) ++plus;
  }
  return plus;
}

std::vector<Configuration> neighbors(const Configuration& config,
                                     const std::vector<ConstraintKind>& kinds) {
  if (kinds.size() != config.size()) {
    throw InvalidProblem("constraint kind list and configuration sizes differ");
  }
  std::vector<Configuration> out;
  for (std::size_t j = 0; j < kinds.size(); ++j) {
    if (kinds[j] == ConstraintKind::Soft) out.push_back(config.flipped({j}));
  }
  return out;
}

ConfigSearchResult greedy_maxfs(const QpInstance& qp, unsigned workers) {
  const std::vector<std::size_t> soft = qp.soft_indices();
  check_soft_limit(soft.size());
  const std::size_t total = std::size_t{1} << soft.size();

  std::vector<ConfigTraceEntry> trace = evaluate_all(qp, soft, total, workers);

  const ConfigTraceEntry* best = nullptr;
  for (const ConfigTraceEntry& entry : trace) {
    if (!entry.verdict.feasible()) continue;
    if (best == nullptr) {
      best = &entry;
      continue;
    }
    const std::size_t best_level = level(best->config);
    const std::size_t entry_level = level(entry.config);
    if (entry_level > best_level ||
        (entry_level == best_level && pattern_less(best->config, entry.config))) {
      best = &entry;
    }
  }
  if (best == nullptr) {
    throw NoFeasibleConfiguration("every sign configuration is infeasible");
  }
  Configuration chosen = best->config;
  const std::size_t chosen_level = level(chosen);
  return {std::move(chosen), chosen_level, trace.size(), std::move(trace)};
}

ConfigSearchResult heuristic_maxfs(const QpInstance& qp) {
  return heuristic_maxfs(qp, Configuration::all_plus(qp.constraint_count()));
}

ConfigSearchResult heuristic_maxfs(const QpInstance& qp, const Configuration& start) {
  validate_configuration(qp, start);
  const std::vector<std::size_t> soft = qp.soft_indices();
  check_soft_limit(soft.size());

  std::vector<ConfigTraceEntry> trace;
  std::map<std::string, std::size_t> memo;
  auto verdict_of = [&](const Configuration& config) -> const FeasibilityVerdict& {
    auto [slot, fresh] = memo.try_emplace(config.pattern(), trace.size());
    if (fresh) trace.push_back({config, check_feasibility(qp, config)});
    return trace[slot->second].verdict;
  };

  Configuration current = start;
  for (;;) {
    if (verdict_of(current).feasible()) {
      const std::size_t current_level = level(current);
      return {std::move(current), current_level, trace.size(), std::move(trace)};
    }
    std::vector<std::size_t> enforced;
    for (std::size_t j : soft) {
      if (current.sign(j) > 0) enforced.push_back(j);
    }
    if (enforced.empty()) {
      throw NoFeasibleConfiguration(
          "the descent disregarded every soft constraint and the system "
          "stayed infeasible");
    }
    std::optional<std::size_t> move;
    for (std::size_t j : enforced) {
      if (verdict_of(current.flipped({j})).feasible() && !move) move = j;
    }
    current = current.flipped({move.value_or(enforced.front())});
  }
}

}  // namespace qpfeas
