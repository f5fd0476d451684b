#ifndef GPFW_HARNESS_HPP_
#define GPFW_HARNESS_HPP_

#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "gpfw/analysis.hpp"
#include "gpfw/config.hpp"
#include "gpfw/problems.hpp"
#include "gpfw/solvers.hpp"
#include "gpfw/trace_io.hpp"

namespace gpfw {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitMaxIter = 2;
inline constexpr int kExitError = 3;

namespace detail {

// geometric rate of the step-norm tail; NaN when the run is too short to fit
inline double summary_fitted_q(const Trace& trace) {
  std::vector<double> steps;
  for (const auto& rec : trace.records)
    if (rec.step_norm > 0.0) steps.push_back(rec.step_norm);
  try {
    return fit_linear_rate(steps).fitted_q;
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace detail

/// Dispatch a validated config to its solver. The returned trace carries the
/// theoretical constants for the emitted header.
inline Trace dispatch_run(const RunConfig& cfg, const Problem& problem, const Vector& x0) {
  if (cfg.algorithm == "gpa1") return gpa1_run(problem.surface, problem.obj, cfg.solver, x0);
  if (cfg.algorithm == "stationary")
    return stationary_point_solve(problem.surface, problem.obj, cfg.solver.eps, cfg.solver.C,
                                  x0, cfg.solver.seed)
        .trace;
  if (cfg.algorithm == "sphere-gpa") {
    if (!detail::is_unit_sphere(problem.surface))
      throw ValidationError("sphere-gpa requires a unit-sphere problem");
    return sphere_gpa_run(problem.obj, cfg.solver, x0);
  }
  if (cfg.algorithm == "gpa2") {
    const auto* ls = std::get_if<LevelSetSurface>(&problem.surface);
    if (!ls) throw ValidationError("gpa2 requires a level-set surface");
    return gpa2_run(*ls, problem.obj, cfg.solver, x0);
  }
  if (cfg.algorithm == "gpa3") {
    if (!detail::is_unit_sphere(problem.surface))
      throw ValidationError("gpa3 requires a unit-sphere problem");
    return gpa3_run(problem.obj, cfg.solver, x0);
  }
  if (cfg.algorithm == "ffw") return ffw_run(problem.surface, problem.obj, cfg.solver, x0);
  if (cfg.algorithm == "eigmin") {
    if (!problem.obj.has_hessian() || !detail::is_unit_sphere(problem.surface))
      throw ValidationError("eigmin requires a quadratic unit-sphere problem");
    // quadratic problems register a constant Hessian 2A
    const Matrix A = 0.5 * problem.obj.hess(problem.default_x0);
    return eigmin_run(A, x0, cfg.solver).trace;
  }
  throw ValidationError("unknown algorithm id '" + cfg.algorithm + "'");
}

/// Execute a run end to end: resolve the problem and x0, validate, solve,
/// write the trace, print a one-line summary. Returns the process exit code.
inline int run_command(const RunConfig& cfg, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  try {
    const Problem problem = lookup_problem(cfg.problem);
    validate_config(cfg, problem);
    const Vector x0 = resolve_x0(cfg.x0, problem);
    const Trace trace = dispatch_run(cfg, problem, x0);

    if (!cfg.output_path.empty()) {
      TraceHeaderInfo info;
      info.problem = problem.id;
      info.algorithm = cfg.algorithm;
      info.config_echo = cfg.echo;
      for (const auto& k : cfg.defaulted) info.config_echo["defaulted:" + k] = "1";
      emit_trace(trace, cfg.format, cfg.output_path, info);
    }

    const auto& last = trace.records.back();
    out << "problem=" << problem.id << " algorithm=" << cfg.algorithm
        << " iterations=" << trace.records.size() << " final_f=" << detail::fmt17(last.f)
        << " proj_grad_norm=" << detail::fmt17(last.proj_grad_norm)
        << " fitted_q=" << detail::fmt17(detail::summary_fitted_q(trace))
        << " termination=" << to_string(trace.termination) << '\n';

    if (trace.termination == Termination::max_iter) return kExitMaxIter;
    if (trace.termination == Termination::error) return kExitError;
    return kExitConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace gpfw

#endif  // GPFW_HARNESS_HPP_
