#include "qpfeas/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qpfeas/errors.hpp"
#include "qpfeas/problem_io.hpp"
#include "qpfeas/rng.hpp"

namespace qpfeas {

std::string method_name(BenchMethod method) {
  return method == BenchMethod::DualLp ? "dual_lp" : "phase1";
}

std::uint64_t task_seed(std::uint64_t seed, std::size_t m, std::size_t c,
                        std::size_t trial) {
  // Chained splitmix applications avalanche each coordinate in turn.
  const std::uint64_t a = SplitMix64{seed}.bits(m);
  const std::uint64_t b = SplitMix64{a}.bits(c);
  return SplitMix64{b}.bits(trial);
}

std::vector<GridRecord> run_grid(const GridSpec& spec) {
  std::vector<std::size_t> ms = spec.m_values;
  std::vector<std::size_t> cs = spec.c_values;
  std::sort(ms.begin(), ms.end());
  std::sort(cs.begin(), cs.end());

  std::vector<GridRecord> records;
  records.reserve(ms.size() * cs.size() * spec.trials * 2);
  for (std::size_t m : ms) {
    for (std::size_t c : cs) {
      for (std::size_t trial = 0; trial < spec.trials; ++trial) {
        const QpInstance qp = random_instance(m, c, task_seed(spec.seed, m, c, trial));
        const Configuration config = Configuration::all_plus(c);
        for (BenchMethod method : {BenchMethod::DualLp, BenchMethod::Phase1}) {
          const auto start = std::chrono::steady_clock::now();
          const FeasibilityVerdict verdict = method == BenchMethod::DualLp
                                                 ? check_feasibility(qp, config)
                                                 : phase1_check(qp, config);
          const auto stop = std::chrono::steady_clock::now();
          const auto ns =
              std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start);
          records.push_back(
              {m, c, trial, method, verdict.status, ns.count()});
        }
      }
    }
  }
  return records;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRecord>& records) {
  out << "m,c,trial,method,status,wall_time_ns\n";
  for (const GridRecord& r : records) {
    out << r.m << ',' << r.c << ',' << r.trial << ',' << method_name(r.method) << ','
        << (r.status == FeasibilityStatus::Feasible ? "Feasible" : "Infeasible") << ','
        << r.wall_time_ns << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(current);
  return fields;
}

std::uint64_t parse_count(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size() || text.empty() || text[0] == '-') {
      throw std::invalid_argument(text);
    }
    return value;
  } catch (const std::exception&) {
    throw InvalidProblem(where + ": expected a nonnegative integer, got '" + text +
                         "'");
  }
}

}  // namespace

std::vector<GridRecord> read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "m,c,trial,method,status,wall_time_ns") {
    throw InvalidProblem("grid csv: missing or unexpected header");
  }
  std::vector<GridRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "grid csv line " + std::to_string(line_no);
    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      throw InvalidProblem(where + ": expected 6 fields, got " +
                           std::to_string(fields.size()));
    }
    GridRecord r;
    r.m = parse_count(fields[0], where);
    r.c = parse_count(fields[1], where);
    r.trial = parse_count(fields[2], where);
    if (fields[3] == "dual_lp") {
      r.method = BenchMethod::DualLp;
    } else if (fields[3] == "phase1") {
      r.method = BenchMethod::Phase1;
    } else {
      throw InvalidProblem(where + ": unknown method '" + fields[3] + "'");
    }
    if (fields[4] == "Feasible") {
      r.status = FeasibilityStatus::Feasible;
    } else if (fields[4] == "Infeasible") {
      r.status = FeasibilityStatus::Infeasible;
    } else {
      throw InvalidProblem(where + ": unknown status '" + fields[4] + "'");
    }
    r.wall_time_ns = static_cast<std::int64_t>(parse_count(fields[5], where));
    records.push_back(r);
  }
  return records;
}

std::vector<CellSummary> summarize(const std::vector<GridRecord>& records) {
  std::vector<CellSummary> cells;
  std::size_t i = 0;
  while (i < records.size()) {
    // Records arrive sorted, so one (m, c, method) group is contiguous
    // apart from the method interleaving within trials.
    const std::size_t m = records[i].m, c = records[i].c;
    std::size_t end = i;
    while (end < records.size() && records[end].m == m && records[end].c == c) ++end;
    for (BenchMethod method : {BenchMethod::DualLp, BenchMethod::Phase1}) {
      std::vector<double> times;
      for (std::size_t k = i; k < end; ++k) {
        if (records[k].method == method) {
          times.push_back(static_cast<double>(records[k].wall_time_ns));
        }
      }
      if (times.empty()) continue;
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      std::sort(times.begin(), times.end());
      const std::size_t n = times.size();
      const double median =
          n % 2 == 1 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
      cells.push_back({m, c, method, mean, median, n});
    }
    i = end;
  }
  return cells;
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "m,c,method,mean_ns,median_ns,trials\n";
  for (const CellSummary& cell : cells) {
    out << cell.m << ',' << cell.c << ',' << method_name(cell.method) << ','
        << fmt12(cell.mean_ns) << ',' << fmt12(cell.median_ns) << ',' << cell.trials
        << '\n';
  }
}

namespace {

std::string ramp_color(double v) {
  // Linear ramp from deep blue (cold) to red (hot).
  const double lo[3] = {29, 53, 87};
  const double hi[3] = {230, 57, 70};
  char buffer[8];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x",
                static_cast<unsigned>(lo[0] + v * (hi[0] - lo[0])),
                static_cast<unsigned>(lo[1] + v * (hi[1] - lo[1])),
                static_cast<unsigned>(lo[2] + v * (hi[2] - lo[2])));
  return buffer;
}

}  // namespace

std::string heatmap_svg(const std::vector<CellSummary>& cells, BenchMethod method) {
  std::vector<std::size_t> ms, cs;
  std::vector<const CellSummary*> mine;
  for (const CellSummary& cell : cells) {
    if (cell.method != method) continue;
    mine.push_back(&cell);
    ms.push_back(cell.m);
    cs.push_back(cell.c);
  }
  auto uniq = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(ms);
  uniq(cs);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const CellSummary* cell : mine) {
    const double t = std::log10(std::max(cell->mean_ns, 1.0));
    lo = first ? t : std::min(lo, t);
    hi = first ? t : std::max(hi, t);
    first = false;
  }

  const int cw = 72, ch = 36, left = 64, top = 48, legend = 56;
  const int width = left + cw * static_cast<int>(cs.size()) + 16;
  const int height =
      top + ch * static_cast<int>(ms.size()) + legend + 16;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"12\">\n";
  out << "  <text x=\"" << left << "\" y=\"20\">mean feasibility-check time [s], "
      << method_name(method) << "</text>\n";

  for (std::size_t yi = 0; yi < ms.size(); ++yi) {
    out << "  <text x=\"8\" y=\"" << top + ch * (yi + 1) - ch / 2 + 4
        << "\">m=" << ms[yi] << "</text>\n";
  }
  for (std::size_t xi = 0; xi < cs.size(); ++xi) {
    out << "  <text x=\"" << left + cw * xi + 8 << "\" y=\"" << top - 8
        << "\">C=" << cs[xi] << "</text>\n";
  }

  for (const CellSummary* cell : mine) {
    const std::size_t xi =
        std::lower_bound(cs.begin(), cs.end(), cell->c) - cs.begin();
    const std::size_t yi =
        std::lower_bound(ms.begin(), ms.end(), cell->m) - ms.begin();
    const double t = std::log10(std::max(cell->mean_ns, 1.0));
    const double v = hi > lo ? (t - lo) / (hi - lo) : 0.5;
    const double seconds = cell->mean_ns * 1e-9;
    out << "  <rect class=\"cell\" x=\"" << left + cw * xi << "\" y=\""
        << top + ch * yi << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"" << ramp_color(v) << "\"><title>m=" << cell->m
        << " C=" << cell->c << " mean=" << fmt12(seconds) << " s</title></rect>\n";
  }

  // Five-swatch legend from the cold end of the ramp to the hot end.
  const int ly = top + ch * static_cast<int>(ms.size()) + 24;
  for (int s = 0; s < 5; ++s) {
    const double v = s / 4.0;
    const double seconds = std::pow(10.0, lo + v * (hi - lo)) * 1e-9;
    out << "  <rect x=\"" << left + s * 110 << "\" y=\"" << ly
        << "\" width=\"16\" height=\"16\" fill=\"" << ramp_color(v) << "\"/>\n";
    out << "  <text x=\"" << left + s * 110 + 22 << "\" y=\"" << ly + 12 << "\">"
        << fmt12(seconds) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qpfeas
