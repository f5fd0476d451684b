#ifndef GPFW_CONFIG_HPP_
#define GPFW_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpfw/problems.hpp"
#include "gpfw/solvers.hpp"
#include "gpfw/trace_io.hpp"

namespace gpfw {

/// How the starting point is chosen: the problem registry default, a
/// quasi-random surface sample, or an explicit comma-separated vector.
struct X0Spec {
  enum class Kind { registry_default, random, explicit_vector } kind = Kind::registry_default;
  std::uint64_t seed = 0;
  Vector value;
};

struct RunConfig {
  std::string problem;
  std::string algorithm;
  SolverConfig solver;
  X0Spec x0;
  std::string output_path;  // empty: no trace file
  TraceFormat format = TraceFormat::jsonl;
  // keys the parser defaulted rather than read; echoed into the trace header
  std::vector<std::string> defaulted;
  // key -> literal value as parsed, for the header echo
  std::map<std::string, std::string> echo;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const std::string& key, int line) {
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "' expects a number, got '" + v + "'");
  }
  if (used != v.size())
    throw ParseError("line " + std::to_string(line) + ": trailing characters after number in '" +
                     v + "'");
  return out;
}

inline X0Spec parse_x0(const std::string& v, int line) {
  X0Spec spec;
  if (v == "registry-default") {
    spec.kind = X0Spec::Kind::registry_default;
  } else if (v.rfind("random:", 0) == 0) {
    spec.kind = X0Spec::Kind::random;
    spec.seed = static_cast<std::uint64_t>(
        std::stoull(v.substr(7)));
  } else {
    spec.kind = X0Spec::Kind::explicit_vector;
    std::vector<double> comps;
    std::size_t pos = 0;
    while (pos <= v.size()) {
      std::size_t next = v.find(',', pos);
      if (next == std::string::npos) next = v.size();
      comps.push_back(parse_double(trim(v.substr(pos, next - pos)), "x0", line));
      pos = next + 1;
    }
    spec.value.resize(static_cast<int>(comps.size()));
    for (std::size_t i = 0; i < comps.size(); ++i)
      spec.value(static_cast<int>(i)) = comps[i];
  }
  return spec;
}

}  // namespace detail

/// Flat key = value config with optional [section] headers; sections are
/// organizational only (keys stay globally unique). Unknown keys are rejected.
inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("line " + std::to_string(lineno) + ": unterminated section header");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value, got '" + s +
                       "'");
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));
    if (key.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (seen[key])
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen[key] = true;
    cfg.echo[key] = val;

    if (key == "problem") {
      cfg.problem = val;
    } else if (key == "algorithm") {
      cfg.algorithm = val;
    } else if (key == "t") {
      cfg.solver.t = detail::parse_double(val, key, lineno);
    } else if (key == "C") {
      cfg.solver.C = detail::parse_double(val, key, lineno);
    } else if (key == "eps") {
      cfg.solver.eps = detail::parse_double(val, key, lineno);
    } else if (key == "max_iter") {
      cfg.solver.max_iter = static_cast<int>(detail::parse_double(val, key, lineno));
    } else if (key == "tol_x") {
      cfg.solver.tol_x = detail::parse_double(val, key, lineno);
    } else if (key == "tol_grad") {
      cfg.solver.tol_grad = detail::parse_double(val, key, lineno);
    } else if (key == "tol_newton") {
      cfg.solver.tol_newton = detail::parse_double(val, key, lineno);
    } else if (key == "bisect_tol") {
      cfg.solver.bisect_tol = detail::parse_double(val, key, lineno);
    } else if (key == "seed") {
      cfg.solver.seed = static_cast<std::uint64_t>(detail::parse_double(val, key, lineno));
    } else if (key == "x0") {
      cfg.x0 = detail::parse_x0(val, lineno);
    } else if (key == "output") {
      cfg.output_path = val;
    } else if (key == "format") {
      if (val == "jsonl")
        cfg.format = TraceFormat::jsonl;
      else if (val == "csv")
        cfg.format = TraceFormat::csv;
      else
        throw ValidationError("format: expected jsonl or csv, got '" + val + "'");
    } else {
      throw ValidationError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
  }

  // record defaults for the header echo
  static const char* kAll[] = {"problem", "algorithm", "t",          "C",     "eps",
                               "max_iter", "tol_x",    "tol_grad",   "tol_newton",
                               "bisect_tol", "seed",   "x0",         "output", "format"};
  for (const char* k : kAll)
    if (!seen[k]) cfg.defaulted.push_back(k);

  if (cfg.problem.empty()) throw ValidationError("problem: required key missing");
  if (cfg.algorithm.empty()) throw ValidationError("algorithm: required key missing");

  static const char* kAlgos[] = {"gpa1", "stationary", "sphere-gpa", "gpa2",
                                 "gpa3", "ffw",        "eigmin"};
  bool known = false;
  for (const char* a : kAlgos) known = known || cfg.algorithm == a;
  if (!known) throw ValidationError("algorithm: unknown id '" + cfg.algorithm + "'");
  return cfg;
}

/// Cross-field checks that need the resolved problem: Hessian availability for
/// gpa3, the gpa2 step-size window, the gpa1 radius inequality.
inline void validate_config(const RunConfig& cfg, const Problem& problem) {
  if (cfg.algorithm == "gpa3" && !problem.obj.has_hessian())
    throw ValidationError("gpa3 requires a Hessian oracle; problem '" + problem.id +
                          "' registers none");
  if (cfg.algorithm == "gpa2") {
    const auto* ls = std::get_if<LevelSetSurface>(&problem.surface);
    if (!ls) throw ValidationError("gpa2 requires a level-set surface");
    const double t0 = gpa2_default_step(*ls, problem.obj);
    if (cfg.solver.t != 0.0 && !(cfg.solver.t > 0.0 && cfg.solver.t < 2.0 * t0))
      throw ValidationError("gpa2: t must lie in (0, 2 t0) with t0 = 1/(L1 + 2L/R) = " +
                            std::to_string(t0));
  }
  if (cfg.algorithm == "gpa1" || cfg.algorithm == "stationary") {
    const double R = detail::proximal_constant(problem.surface);
    if (!(problem.obj.L / (cfg.solver.C + problem.obj.L1) < R))
      throw ValidationError("gpa1: requires L / (C + L1) < R; raise C");
  }
  if (cfg.x0.kind == X0Spec::Kind::explicit_vector &&
      static_cast<int>(cfg.x0.value.size()) != problem.dim)
    throw ValidationError("x0: dimension " + std::to_string(cfg.x0.value.size()) +
                          " does not match problem dimension " + std::to_string(problem.dim));
}

/// Materialize the starting point for a validated config.
inline Vector resolve_x0(const X0Spec& spec, const Problem& problem) {
  switch (spec.kind) {
    case X0Spec::Kind::registry_default:
      return problem.default_x0;
    case X0Spec::Kind::random:
      return sample_surface(problem.surface, 1, spec.seed).front();
    default:
      return spec.value;
  }
}

}  // namespace gpfw

#endif  // GPFW_CONFIG_HPP_
