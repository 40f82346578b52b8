#include "qpfeas/problem_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "qpfeas/errors.hpp"

namespace qpfeas {

using nlohmann::json;

std::string fmt12(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

double number_at(const json& value, const std::string& where) {
  if (!value.is_number()) throw InvalidProblem(where + " must be a number");
  return value.get<double>();
}

Vector vector_at(const json& value, std::size_t expect, const std::string& where) {
  if (!value.is_array() || value.size() != expect) {
    throw InvalidProblem(where + " must be an array of " + std::to_string(expect) +
                         " numbers");
  }
  Vector out(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    out[i] = number_at(value[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

}  // namespace

QpInstance load_problem(std::istream& in, const std::string& name) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InvalidProblem(name + ": syntax error at line " +
                         std::to_string(line_of(text, err.byte)) + ": " + err.what());
  }
  try {
    if (!doc.is_object()) throw InvalidProblem("top level must be an object");

    if (!doc.contains("m")) throw InvalidProblem("field m is required");
    const json& jm = doc["m"];
    if (!jm.is_number_integer() || jm.get<std::int64_t>() < 1) {
      throw InvalidProblem("field m must be a positive integer");
    }
    const std::size_t m = jm.get<std::size_t>();

    Matrix h = Matrix::identity(m);
    if (doc.contains("H")) {
      const json& jh = doc["H"];
      if (!jh.is_array() || jh.size() != m) {
        throw InvalidProblem("field H must be an array of " + std::to_string(m) +
                             " rows");
      }
      for (std::size_t i = 0; i < m; ++i) {
        Vector row = vector_at(jh[i], m, "H[" + std::to_string(i) + "]");
        for (std::size_t j = 0; j < m; ++j) h(i, j) = row[j];
      }
    }

    Vector f(m);
    if (doc.contains("F")) f = vector_at(doc["F"], m, "field F");

    if (!doc.contains("constraints")) {
      throw InvalidProblem("field constraints is required");
    }
    const json& jc = doc["constraints"];
    if (!jc.is_array()) throw InvalidProblem("field constraints must be an array");
    const std::size_t cc = jc.size();

    Matrix a(m, cc);
    Vector b(cc);
    std::vector<ConstraintKind> kinds(cc);
    for (std::size_t j = 0; j < cc; ++j) {
      const std::string where = "constraints[" + std::to_string(j) + "]";
      const json& entry = jc[j];
      if (!entry.is_object()) throw InvalidProblem(where + " must be an object");
      if (!entry.contains("a")) throw InvalidProblem(where + ".a is required");
      Vector row = vector_at(entry["a"], m, where + ".a");
      for (std::size_t i = 0; i < m; ++i) a(i, j) = row[i];
      if (!entry.contains("b")) throw InvalidProblem(where + ".b is required");
      b[j] = number_at(entry["b"], where + ".b");
      if (!entry.contains("kind")) throw InvalidProblem(where + ".kind is required");
      const json& jk = entry["kind"];
      const std::string kind = jk.is_string() ? jk.get<std::string>() : std::string();
      if (kind == "hard") {
        kinds[j] = ConstraintKind::Hard;
      } else if (kind == "soft") {
        kinds[j] = ConstraintKind::Soft;
      } else {
        throw InvalidProblem(where + ".kind must be \"hard\" or \"soft\"");
      }
    }

    try {
      return QpInstance(std::move(h), std::move(f), std::move(a), std::move(b),
                        std::move(kinds));
    } catch (const NotPositiveDefinite&) {
      throw InvalidProblem("field H must be positive definite");
    } catch (const InvalidProblem&) {
      // Sizes were validated above, so only the symmetry check remains.
      throw InvalidProblem("field H must be symmetric");
    }
  } catch (const InvalidProblem& err) {
    throw InvalidProblem(name + ": " + err.what());
  }
}

QpInstance load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidProblem(path + ": cannot open file");
  return load_problem(in, path);
}

std::string problem_to_json(const QpInstance& qp) {
  const std::size_t m = qp.dimension();
  std::ostringstream out;
  out << "{\n  \"m\": " << m << ",\n  \"H\": [";
  for (std::size_t i = 0; i < m; ++i) {
    out << (i == 0 ? "" : ",") << "\n    [";
    for (std::size_t j = 0; j < m; ++j) {
      out << (j == 0 ? "" : ", ") << fmt12(qp.h()(i, j));
    }
    out << "]";
  }
  out << "\n  ],\n  \"F\": [";
  for (std::size_t i = 0; i < m; ++i) {
    out << (i == 0 ? "" : ", ") << fmt12(qp.f()[i]);
  }
  out << "],\n  \"constraints\": [";
  for (std::size_t j = 0; j < qp.constraint_count(); ++j) {
    out << (j == 0 ? "" : ",") << "\n    {\"a\": [";
    for (std::size_t i = 0; i < m; ++i) {
      out << (i == 0 ? "" : ", ") << fmt12(qp.a()(i, j));
    }
    out << "], \"b\": " << fmt12(qp.b()[j]) << ", \"kind\": \""
        << (qp.kind(j) == ConstraintKind::Hard ? "hard" : "soft") << "\"}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string verdict_to_json(const FeasibilityVerdict& verdict,
                            std::int64_t wall_time_ns) {
  std::ostringstream out;
  out << "{\n  \"status\": \""
      << (verdict.feasible() ? "Feasible" : "Infeasible") << "\",\n  \"certificate\": [";
  for (std::size_t j = 0; j < verdict.certificate.size(); ++j) {
    out << (j == 0 ? "" : ", ") << fmt12(verdict.certificate[j]);
  }
  out << "],\n  \"lp_optimum\": ";
  if (verdict.lp_optimum.has_value()) {
    out << fmt12(*verdict.lp_optimum);
  } else {
    out << "null";
  }
  out << ",\n  \"wall_time_ns\": " << wall_time_ns << "\n}\n";
  return out.str();
}

}  // namespace qpfeas
