#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpfeas/bench.hpp"
#include "qpfeas/config_search.hpp"
#include "qpfeas/errors.hpp"
#include "qpfeas/problem_io.hpp"
#include "qpfeas/qp_oracle.hpp"
#include "qpfeas/scenario.hpp"

namespace fs = std::filesystem;
using namespace qpfeas;

namespace {

Configuration parse_config(const std::string& text, std::size_t expect) {
  if (text.size() != expect) {
    throw InvalidProblem("--config must have one sign per constraint (" +
                         std::to_string(expect) + "), got " +
                         std::to_string(text.size()));
  }
  std::vector<int> signs;
  for (char ch : text) {
    if (ch == '+') {
      signs.push_back(1);
    } else if (ch == '-') {
      signs.push_back(-1);
    } else {
      throw InvalidProblem(std::string("--config may contain only '+' and '-', got '") +
                           ch + "'");
    }
  }
  return Configuration(std::move(signs));
}

std::string solution_json(const QpSolution& sol) {
  std::string out = "{\"minimizer\": [";
  for (std::size_t i = 0; i < sol.minimizer.size(); ++i) {
    out += (i == 0 ? "" : ", ") + fmt12(sol.minimizer[i]);
  }
  out += "], \"objective\": " + fmt12(sol.objective) + ", \"multipliers\": [";
  for (std::size_t j = 0; j < sol.multipliers.size(); ++j) {
    out += (j == 0 ? "" : ", ") + fmt12(sol.multipliers[j]);
  }
  out += "], \"active_set\": [";
  for (std::size_t k = 0; k < sol.active_set.size(); ++k) {
    out += (k == 0 ? "" : ", ") + std::to_string(sol.active_set[k]);
  }
  return out + "]}";
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidProblem(path.string() + ": cannot write");
  return out;
}

int run_check(const std::string& path, const std::string& config_text, bool baseline,
              bool solve) {
  const QpInstance qp = load_problem_file(path);
  const Configuration config = config_text.empty()
                                   ? Configuration::all_plus(qp.constraint_count())
                                   : parse_config(config_text, qp.constraint_count());
  const auto start = std::chrono::steady_clock::now();
  const FeasibilityVerdict verdict =
      baseline ? phase1_check(qp, config) : check_feasibility(qp, config);
  const auto wall = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  std::string doc = verdict_to_json(verdict, wall);
  if (solve) {
    const std::optional<QpSolution> sol = solve_qp(qp, config);
    doc.erase(doc.rfind("\n}"));
    doc += ",\n  \"solution\": " + (sol ? solution_json(*sol) : std::string("null")) +
           "\n}\n";
  }
  std::cout << doc;
  return verdict.feasible() ? 0 : 3;
}

int run_maxfs(const std::string& path, const std::string& strategy) {
  const QpInstance qp = load_problem_file(path);
  const ConfigSearchResult result =
      strategy == "greedy" ? greedy_maxfs(qp) : heuristic_maxfs(qp);

  std::cout << "{\n  \"strategy\": \"" << strategy << "\",\n  \"chosen\": \""
            << result.chosen.pattern() << "\",\n  \"level\": " << result.level
            << ",\n  \"evaluations\": " << result.evaluations << ",\n  \"trace\": [";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    std::cout << (i == 0 ? "" : ",") << "\n    {\"configuration\": \""
              << result.trace[i].config.pattern() << "\", \"status\": \""
              << (result.trace[i].verdict.feasible() ? "Feasible" : "Infeasible")
              << "\"}";
  }
  std::cout << "\n  ]\n}\n";
  return 0;
}

int run_bench(const GridSpec& spec, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const std::vector<GridRecord> records = run_grid(spec);
  const std::vector<CellSummary> cells = summarize(records);

  {
    auto out = open_for_write(fs::path(out_dir) / "grid.csv");
    write_grid_csv(out, records);
  }
  {
    auto out = open_for_write(fs::path(out_dir) / "summary.csv");
    write_summary_csv(out, cells);
  }
  for (BenchMethod method : {BenchMethod::DualLp, BenchMethod::Phase1}) {
    auto out = open_for_write(fs::path(out_dir) /
                              ("heatmap_" + method_name(method) + ".svg"));
    out << heatmap_svg(cells, method);
  }
  std::cout << records.size() << " records written to " << out_dir << "\n";
  return 0;
}

int run_scenario(double dt, double horizon, const std::string& out_dir,
                 bool dump_instances) {
  if (!(dt > 0.0)) throw InvalidProblem("--dt must be positive");
  if (horizon < 0.0) throw InvalidProblem("--horizon must be nonnegative");
  fs::create_directories(out_dir);
  auto csv = open_for_write(fs::path(out_dir) / "scenario.csv");
  csv << "t,greedy_pattern,greedy_level,greedy_evaluations,"
         "heuristic_pattern,heuristic_level,heuristic_evaluations\n";

  std::size_t samples = 0;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t > horizon + 1e-9) break;
    const TimedInstance snap = cbf_scenario(t);
    const ConfigSearchResult greedy = greedy_maxfs(snap.instance);
    const ConfigSearchResult walked = heuristic_maxfs(snap.instance);
    csv << fmt12(t) << ',' << greedy.chosen.pattern() << ',' << greedy.level << ','
        << greedy.evaluations << ',' << walked.chosen.pattern() << ',' << walked.level
        << ',' << walked.evaluations << '\n';
    if (dump_instances) {
      auto doc = open_for_write(fs::path(out_dir) /
                                ("instance_" + std::to_string(k) + ".json"));
      doc << problem_to_json(snap.instance);
    }
    ++samples;
  }
  std::cout << samples << " samples written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility analysis for sign-configured quadratic programs"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Decide feasibility of a problem file");
  std::string check_path;
  std::string config_text;
  bool baseline = false, solve = false;
  check->add_option("file", check_path, "problem document")->required();
  check->add_option("--config", config_text,
                    "sign pattern such as '++-', one sign per constraint");
  check->add_flag("--baseline", baseline, "use the phase-1 simplex baseline");
  check->add_flag("--solve", solve, "also solve the program when feasible");

  auto* maxfs = app.add_subcommand("maxfs", "Search for a maximal feasible "
                                            "configuration of soft constraints");
  std::string maxfs_path, strategy;
  maxfs->add_option("file", maxfs_path, "problem document")->required();
  maxfs->add_option("--strategy", strategy, "greedy or heuristic")
      ->required()
      ->check(CLI::IsMember({"greedy", "heuristic"}));

  auto* bench = app.add_subcommand("bench", "Time both feasibility tests over a "
                                            "grid of random instances");
  GridSpec spec;
  std::string bench_out;
  bench->add_option("--m", spec.m_values, "decision dimensions");
  bench->add_option("--c", spec.c_values, "constraint counts");
  bench->add_option("--trials", spec.trials, "trials per cell");
  bench->add_option("--seed", spec.seed, "grid seed");
  bench->add_option("--out", bench_out, "output directory")->required();

  auto* scenario = app.add_subcommand("scenario", "Run the time-varying "
                                                  "constraint-selection scenario");
  double dt = 0.1, horizon = 10.0;
  std::string scenario_out;
  bool dump_instances = false;
  scenario->add_option("--dt", dt, "sampling step in seconds");
  scenario->add_option("--horizon", horizon, "final time in seconds");
  scenario->add_option("--out", scenario_out, "output directory")->required();
  scenario->add_flag("--dump-instances", dump_instances,
                     "also export each sampled instance as a problem document");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_path, config_text, baseline, solve);
    if (maxfs->parsed()) return run_maxfs(maxfs_path, strategy);
    if (bench->parsed()) return run_bench(spec, bench_out);
    return run_scenario(dt, horizon, scenario_out, dump_instances);
  } catch (const NoFeasibleConfiguration& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
