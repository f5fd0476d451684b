#ifndef GPFW_ACCEPTANCE_HPP_
#define GPFW_ACCEPTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpfw/analysis.hpp"
#include "gpfw/harness.hpp"
#include "gpfw/problems.hpp"
#include "gpfw/solvers.hpp"
#include "gpfw/trace_io.hpp"

namespace gpfw {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;  // measured vs expected, or the failure reason
};

namespace accept {

inline std::string num(double v) { return detail::fmt17(v); }

// --- c01: GPA1 Lyapunov decrease on 5 problems x 3 seeds -------------------

inline CriterionResult c01_gpa1_lyapunov() {
  CriterionResult r{"c01-gpa1-lyapunov"};
  const std::vector<std::string> ids = {"minstat:r=2", "e2", "approxlinear", "sphere-linear",
                                        "quad:1,2,10"};
  double worst = -std::numeric_limits<double>::infinity();
  int runs = 0;
  for (const auto& id : ids) {
    const Problem pr = lookup_problem(id);
    const double R = detail::proximal_constant(pr.surface);
    SolverConfig cfg;
    cfg.C = std::max(1.0, pr.obj.L / R - pr.obj.L1 + 1.0);
    cfg.max_iter = 10000;
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
      const Vector x0 = sample_surface(pr.surface, 1, seed).front();
      const Trace tr = gpa1_run(pr.surface, pr.obj, cfg, x0);
      ++runs;
      for (std::size_t k = 0; k + 1 < tr.records.size(); ++k) {
        const auto& a = tr.records[k];
        const auto& b = tr.records[k + 1];
        const double lhs = b.f + 0.5 * cfg.C * a.step_norm * a.step_norm;
        worst = std::max(worst, lhs - a.f);
        if (lhs > a.f + 1e-10) {
          r.detail = id + " seed " + std::to_string(seed) + " k=" + std::to_string(k) +
                     ": violation " + num(lhs - a.f) + " > 1e-10";
          return r;
        }
      }
    }
  }
  r.pass = true;
  r.detail = std::to_string(runs) + " runs, worst Lyapunov slack " + num(worst) +
             " (allowed 1e-10)";
  return r;
}

// --- c02: stationary-point step bound and output residual ------------------

inline CriterionResult c02_stationary_steps() {
  CriterionResult r{"c02-stationary-steps"};
  std::ostringstream d;
  for (const auto& id : {"quad:1,2,10", "quad:1,2,3"}) {
    const Problem pr = lookup_problem(id);
    for (double eps : {1e-2, 1e-3}) {
      const auto res = stationary_point_solve(pr.surface, pr.obj, eps, 1.0, pr.default_x0);
      const double n_bound = res.trace.constants.at("N");
      const double resid = stationarity_distance(pr.surface, pr.obj, res.x);
      if (static_cast<double>(res.steps) > n_bound) {
        r.detail = std::string(id) + " eps=" + num(eps) + ": " + std::to_string(res.steps) +
                   " steps > bound " + num(n_bound);
        return r;
      }
      if (resid > eps) {
        r.detail = std::string(id) + " eps=" + num(eps) + ": residual " + num(resid) +
                   " > eps";
        return r;
      }
      d << id << "(eps=" << eps << "): " << res.steps << "<=" << n_bound
        << " steps, residual " << num(resid) << "; ";
    }
  }
  r.pass = true;
  r.detail = d.str();
  return r;
}

// shared run for c03/c04: diag(1,2,10) from x0 with (x0, e1) = 0.5
inline Trace eigshared_trace() {
  const Problem pr = lookup_problem("quad:1,2,10");
  Vector x0(3);
  const double rest = std::sqrt(0.375);  // (0.5, ., .) stays a unit vector
  x0 << 0.5, rest, rest;
  SolverConfig cfg;
  return sphere_gpa_run(pr.obj, cfg, x0);
}

// --- c03: per-step bound with mu from the gradient-domination lemma --------

inline CriterionResult c03_per_step_bound() {
  CriterionResult r{"c03-per-step-bound"};
  const Problem pr = lookup_problem("quad:1,2,10");
  const Trace tr = eigshared_trace();
  const double lam1 = *pr.f0;  // eigensolver oracle
  const double mu = 1.0;       // 4 tau^2 (lambda_2 - lambda_1), tau = 0.5
  double worst = 0.0;
  int checked = 0;
  for (std::size_t k = 0; k + 1 < tr.records.size(); ++k) {
    const double phi_k = tr.records[k].f - lam1;
    const double phi_n = tr.records[k + 1].f - lam1;
    if (phi_k < 1e-12) continue;  // below the floating noise floor
    const Vector& x = tr.records[k].x;
    const double denom = (pr.obj.L1 * x - pr.obj.grad(x)).norm();
    const double q_k = 1.0 - mu / (2.0 * denom);
    ++checked;
    worst = std::max(worst, phi_n / (q_k * phi_k));
    if (phi_n > q_k * phi_k * (1.0 + 1e-8)) {
      r.detail = "k=" + std::to_string(k) + ": phi ratio " + num(phi_n / phi_k) +
                 " exceeds per-step q " + num(q_k);
      return r;
    }
  }
  r.pass = true;
  r.detail = std::to_string(checked) + " steps checked, worst ratio/q " + num(worst) +
             " (allowed 1+1e-8)";
  return r;
}

// --- c04: eigenvalue-problem rates: fitted tail vs q1, global bound vs q ---

inline CriterionResult c04_eigmin_rate() {
  CriterionResult r{"c04-eigmin-rate"};
  const Problem pr = lookup_problem("quad:1,2,10");
  const Trace tr = eigshared_trace();
  const double lam1 = *pr.f0;
  std::vector<double> phi;
  for (const auto& rec : tr.records) {
    const double v = rec.f - lam1;
    if (v < 1e-12) break;
    phi.push_back(v);
  }
  const double q1 = 8.0 / 9.0;  // (lambda_n - lambda_2)/(lambda_n - lambda_1)
  const RateReport fit = fit_linear_rate(phi);
  if (!(fit.fitted_q <= q1 + 0.02)) {
    r.detail = "fitted tail rate " + num(fit.fitted_q) + " > q1 + 0.02 = " + num(q1 + 0.02);
    return r;
  }
  const double q = 1.0 - 0.25 * (2.0 - 1.0) / (10.0 - 1.0);  // tau = 0.5
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (phi[k] > std::pow(q, static_cast<double>(k)) * phi[0]) {
      r.detail = "global bound fails at k=" + std::to_string(k);
      return r;
    }
  }
  r.pass = true;
  r.detail = "fitted tail rate " + num(fit.fitted_q) + " <= " + num(q1 + 0.02) +
             "; global bound with q=" + num(q) + " holds on " + std::to_string(phi.size()) +
             " iterates";
  return r;
}

// --- c05: gradient-domination inequality on the tau = 0.5 half -------------

inline CriterionResult c05_gradient_domination() {
  CriterionResult r{"c05-gradient-domination"};
  const Problem pr = lookup_problem("quad:1,2,10");
  const double lam1 = 1.0, lam2 = 2.0, tau = 0.5;
  const double mu = 4.0 * tau * tau * (lam2 - lam1);
  const auto pts = sample_htau(3, HalfSpaceRestriction{1, tau}, 10000, 7);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    const Vector g = pr.obj.grad(x);
    const double lhs = (g - g.dot(x) * x).squaredNorm();
    const double rhs = mu * (pr.obj.f(x) - lam1);
    worst = std::min(worst, lhs - rhs);
    if (lhs < rhs - 1e-9) {
      r.detail = "violation " + num(rhs - lhs) + " at sample with x1=" + num(x(0));
      return r;
    }
  }
  r.pass = true;
  r.detail = "10000 samples, min(lhs - rhs) = " + num(worst) + " (allowed -1e-9)";
  return r;
}

// --- c06: LPL exponent estimates on the circle examples --------------------

inline CriterionResult c06_lpl_exponents() {
  CriterionResult r{"c06-lpl-exponents"};
  std::ostringstream d;
  const auto path = lpl2d_angle_path(0.2, 1e-3, 40);
  struct Case {
    double p, lo, hi;
  };
  for (const Case c : {Case{0.5, 1.85, 2.15}, Case{1.0, 1.23, 1.43}}) {
    const Problem pr = make_lpl2d(c.p);
    const double a = lpl_exponent_estimate(pr.surface, pr.obj, *pr.f0, path);
    if (!(a >= c.lo && a <= c.hi)) {
      r.detail = "p=" + num(c.p) + ": alpha-hat " + num(a) + " outside [" + num(c.lo) + ", " +
                 num(c.hi) + "]";
      return r;
    }
    d << "p=" << c.p << ": alpha-hat " << num(a) << " in [" << c.lo << ", " << c.hi << "]; ";
  }
  r.pass = true;
  r.detail = d.str();
  return r;
}

// --- c07: GPA2 per-step decrease and surface membership --------------------

inline CriterionResult c07_gpa2_decrease() {
  CriterionResult r{"c07-gpa2-decrease"};
  std::ostringstream d;
  for (const auto& id : {"lpl2d:p=0.5", "scf"}) {
    const Problem pr = lookup_problem(id);
    const auto& ls = std::get<LevelSetSurface>(pr.surface);
    SolverConfig cfg;  // t = 0 selects t0
    const Trace tr = gpa2_run(ls, pr.obj, cfg, pr.default_x0);
    const double qt = tr.constants.at("q_t");
    double worst = std::numeric_limits<double>::infinity();
    double worst_mem = 0.0;
    for (std::size_t k = 0; k + 1 < tr.records.size(); ++k) {
      const auto& a = tr.records[k];
      const double decrease = a.f - tr.records[k + 1].f;
      const double need = a.proj_grad_norm * a.proj_grad_norm * qt - 1e-9 * (1.0 + std::abs(a.f));
      worst = std::min(worst, decrease - need);
      if (decrease < need) {
        r.detail = std::string(id) + " k=" + std::to_string(k) + ": decrease " + num(decrease) +
                   " < required " + num(need);
        return r;
      }
      worst_mem = std::max(worst_mem, membership_residual(pr.surface, tr.records[k + 1].x));
    }
    if (worst_mem > 1e-8) {
      r.detail = std::string(id) + ": membership residual " + num(worst_mem) + " > 1e-8";
      return r;
    }
    d << id << ": " << tr.records.size() << " iters, min slack " << num(worst)
      << ", max membership " << num(worst_mem) << "; ";
  }
  r.pass = true;
  r.detail = d.str();
  return r;
}

// --- c08: GPA3 superlinear Newton tail, single phase switch ----------------

inline CriterionResult c08_gpa3_superlinear() {
  CriterionResult r{"c08-gpa3-superlinear"};
  const Problem pr = lookup_problem("quad:1,2,3");
  Vector x0(3);
  x0 << 1.0, 0.15, 0.1;
  x0.normalize();
  SolverConfig cfg;
  const Trace tr = gpa3_run(pr.obj, cfg, x0);
  if (tr.constants.count("phase_switches") == 0 ||
      tr.constants.at("phase_switches") != 1.0) {
    r.detail = "expected exactly one phase switch, got " +
               (tr.constants.count("phase_switches")
                    ? num(tr.constants.at("phase_switches"))
                    : std::string("none"));
    return r;
  }
  std::vector<double> F;
  for (const auto& rec : tr.records)
    if (rec.newton_residual) F.push_back(*rec.newton_residual);
  int checked = 0;
  for (std::size_t k = 0; k + 1 < F.size(); ++k) {
    if (F[k] > 1e-2 || F[k] < 1e-12) continue;
    ++checked;
    if (F[k + 1] > std::pow(F[k], 1.2)) {
      r.detail = "Newton step " + std::to_string(k) + ": " + num(F[k + 1]) + " > " +
                 num(F[k]) + "^1.2";
      return r;
    }
  }
  if (checked < 2) {
    r.detail = "superlinear window too short (" + std::to_string(checked) + " pairs)";
    return r;
  }
  r.pass = true;
  r.detail = "1 phase switch; " + std::to_string(checked) +
             " Newton pairs satisfy ||F_{k+1}|| <= ||F_k||^1.2; final ||F|| = " +
             num(F.back());
  return r;
}

// --- c09: linear FFW rate on the approximately linear problem --------------

inline CriterionResult c09_ffw_linear_rate() {
  CriterionResult r{"c09-ffw-linear-rate"};
  const Problem pr = lookup_problem("approxlinear");
  SolverConfig ref_cfg;
  ref_cfg.max_iter = 1000;
  ref_cfg.tol_x = 0.0;  // run the full reference length
  const Vector xstar = ffw_run(pr.surface, pr.obj, ref_cfg, pr.default_x0).final_x;

  SolverConfig cfg;
  cfg.max_iter = 100;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, pr.default_x0);
  const double q = *pr.theoretical_q;  // 1/9
  const double d0 = (pr.default_x0 - xstar).norm();
  double worst = 0.0;
  int checked = 0;
  for (const auto& rec : tr.records) {
    const double dist = (rec.x - xstar).norm();
    if (dist <= 1e-13) break;  // at the reference point's own noise floor
    const double bound = std::pow(q, static_cast<double>(rec.k)) * d0 * 1.05;
    ++checked;
    worst = std::max(worst, dist / bound);
    if (dist > bound) {
      r.detail = "k=" + std::to_string(rec.k) + ": ||x_k - x*|| = " + num(dist) +
                 " > bound " + num(bound);
      return r;
    }
  }
  r.pass = true;
  r.detail = std::to_string(checked) + " iterates within q^k bound (q=" + num(q) +
             ", slack 5%), worst ratio " + num(worst);
  return r;
}

// --- c10: per-pair step contraction on a certified m > 1 instance ----------

inline CriterionResult c10_ffw_contraction() {
  CriterionResult r{"c10-ffw-contraction"};
  const Problem pr = lookup_problem("approxlinear");
  // certified dominance: ||f'|| >= ||c|| - eps (1 + ||d||) on the unit ball
  const double eps = 0.1;
  const Vector d = (Vector(3) << 0.3, 0.2, 0.1).finished();
  const Vector c = (Vector(3) << 0.0, 0.0, -1.0).finished() + eps * d;
  const double m_hat = (c.norm() - eps * (1.0 + d.norm())) / (1.0 * pr.obj.L1);
  if (!(m_hat >= 1.5)) {
    r.detail = "certified m-hat " + num(m_hat) + " < 1.5";
    return r;
  }
  SolverConfig cfg;
  cfg.max_iter = 200;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, pr.default_x0);
  double worst = 0.0;
  int checked = 0;
  for (std::size_t k = 0; k + 1 < tr.records.size(); ++k) {
    const double s0 = tr.records[k].step_norm;
    const double s1 = tr.records[k + 1].step_norm;
    if (s0 < 1e-13) break;
    ++checked;
    worst = std::max(worst, s1 * m_hat / s0);
    if (s1 > s0 / m_hat * (1.0 + 1e-8)) {
      r.detail = "pair " + std::to_string(k) + ": " + num(s1) + " > " + num(s0 / m_hat);
      return r;
    }
  }
  r.pass = true;
  r.detail = "m-hat " + num(m_hat) + " >= 1.5; " + std::to_string(checked) +
             " pairs contract, worst m-scaled ratio " + num(worst);
  return r;
}

// --- c11: one-step stationary trap on the non-smooth circle example --------

inline CriterionResult c11_minstat() {
  CriterionResult r{"c11-minstat"};
  const Problem pr = lookup_problem("minstat:r=2");
  const auto& bb = std::get<BallBoundarySurface>(pr.surface);
  // start at angle 0.5: x0 > 0, y0 in (-1, 0)
  const Vector x0 = bb.center + bb.r * (Vector(2) << std::sin(0.5), std::cos(0.5)).finished();
  SolverConfig cfg;
  cfg.max_iter = 1;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, x0);
  const Vector landing = tr.final_x;
  if (landing.norm() > 1e-12) {
    r.detail = "one step landed at distance " + num(landing.norm()) + " from the origin";
    return r;
  }
  const double stat = stationarity_distance(pr.surface, pr.obj, Vector(Vector::Zero(2)));
  if (stat > 1e-12) {
    r.detail = "origin stationarity distance " + num(stat) + " > 1e-12";
    return r;
  }
  const Vector xmin = *pr.minimizer;
  const double fmin = pr.obj.f(xmin);
  if (std::abs(fmin - (-0.5)) > 1e-12 || pr.obj.f(Vector(Vector::Zero(2))) <= fmin) {
    r.detail = "minimizer value " + num(fmin) + " != -1/2";
    return r;
  }
  r.pass = true;
  r.detail = "one step lands at the origin (|x| = " + num(landing.norm()) +
             "), stationary (dist " + num(stat) + ") but f = 0 > f_min = " + num(fmin);
  return r;
}

// --- c12: cubic stalling of FFW on the degenerate circle -------------------

inline CriterionResult c12_e2_failure() {
  CriterionResult r{"c12-e2-failure"};
  const Problem pr = lookup_problem("e2");
  // one explicit step from (x0, 0.5 - sqrt(1/4 - x0^2))
  std::vector<double> lx, ly;
  for (int i = 0; i < 9; ++i) {
    const double x0 = 1e-1 * std::pow(1e-2, i / 8.0);
    Vector p0(2);
    p0 << x0, 0.5 - std::sqrt(0.25 - x0 * x0);
    SolverConfig cfg;
    cfg.max_iter = 1;
    const Trace tr = ffw_run(pr.surface, pr.obj, cfg, p0);
    const double dx = std::abs(x0 - tr.final_x(0));
    lx.push_back(std::log(x0));
    ly.push_back(std::log(dx));
  }
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    xm += lx[i];
    ym += ly[i];
  }
  xm /= lx.size();
  ym /= ly.size();
  double num_ = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num_ += (lx[i] - xm) * (ly[i] - ym);
    den += (lx[i] - xm) * (lx[i] - xm);
  }
  const double exponent = num_ / den;
  if (!(exponent >= 2.7 && exponent <= 3.3)) {
    r.detail = "fitted cubic exponent " + num(exponent) + " outside [2.7, 3.3]";
    return r;
  }

  Vector p0(2);
  p0 << 0.1, 0.5 - std::sqrt(0.25 - 0.01);
  SolverConfig cfg;
  cfg.max_iter = 1000;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, p0);
  if (tr.termination != Termination::max_iter) {
    r.detail = "expected a stalled run, got " + std::string(to_string(tr.termination));
    return r;
  }
  std::vector<double> steps;
  for (const auto& rec : tr.records)
    if (rec.step_norm > 0.0) steps.push_back(rec.step_norm);
  const double rate = fit_linear_rate(steps).fitted_q;
  if (!(rate > 0.99)) {
    r.detail = "tail rate " + num(rate) + " <= 0.99";
    return r;
  }
  r.pass = true;
  r.detail = "one-step exponent " + num(exponent) + " in [2.7, 3.3]; stalled run tail rate " +
             num(rate) + " > 0.99";
  return r;
}

// --- c13: chord-angle calculator -------------------------------------------

inline CriterionResult c13_theta_calculator() {
  CriterionResult r{"c13-theta-calculator"};
  if (ffw_h(1.0) != std::sqrt(2.0)) {
    r.detail = "h(1) = " + num(ffw_h(1.0)) + " != sqrt(2)";
    return r;
  }
  std::ostringstream d;
  d << "h(1) = sqrt(2) exactly; ";
  for (double m : {1.05, 1.2, 1.4}) {
    const double tm = ffw_theta_m(m);
    const double resid = std::abs(ffw_h(tm) / tm - m);
    if (resid > 1e-12) {
      r.detail = "m=" + num(m) + ": residual " + num(resid) + " > 1e-12";
      return r;
    }
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double theta = tm * (i + 0.5) / 100.0;
      const double rate = ffw_local_rate(m, theta);
      worst = std::max(worst, rate);
      if (!(rate < 1.0)) {
        r.detail = "m=" + num(m) + " theta=" + num(theta) + ": rate " + num(rate) + " >= 1";
        return r;
      }
    }
    d << "m=" << m << ": theta_m=" << num(tm) << ", residual " << num(resid)
      << ", max rate " << num(worst) << "; ";
  }
  r.pass = true;
  r.detail = d.str();
  return r;
}

// --- c14: gradient and Lipschitz hygiene on every registered problem -------

inline CriterionResult c14_derivative_hygiene() {
  CriterionResult r{"c14-derivative-hygiene"};
  double worst_fd = 0.0, worst_key = -std::numeric_limits<double>::infinity();
  for (const Problem& pr : registered_problems()) {
    const auto pts = sample_surface(pr.surface, 100, 11);
    for (const auto& x : pts) {
      const double e = fd_gradient_check(pr.obj, x, 1e-6);
      worst_fd = std::max(worst_fd, e);
      if (e > 1e-5) {
        r.detail = pr.id + ": finite-difference error " + num(e) + " > 1e-5";
        return r;
      }
    }
    const auto xs = sample_surface(pr.surface, 1000, 13);
    const auto ys = sample_surface(pr.surface, 1000, 17);
    for (int i = 0; i < 1000; ++i) {
      const Vector& x = xs[i];
      const Vector& y = ys[i];
      const double lin = pr.obj.f(x) + pr.obj.grad(x).dot(y - x);
      const double quad = 0.5 * pr.obj.L1 * (y - x).squaredNorm();
      const double slack = 1e-10 * (1.0 + (y - x).squaredNorm());
      const double excess = std::abs(pr.obj.f(y) - lin) - quad;
      worst_key = std::max(worst_key, excess);
      if (excess > slack) {
        r.detail = pr.id + ": quadratic-bound violation " + num(excess) + " > " + num(slack);
        return r;
      }
    }
  }
  r.pass = true;
  r.detail = "worst fd error " + num(worst_fd) + " (allowed 1e-5); worst quadratic-bound excess " +
             num(worst_key) + " (allowed ~1e-10)";
  return r;
}

// --- c15: byte-identical traces for identical configs ----------------------

inline CriterionResult c15_determinism() {
  CriterionResult r{"c15-determinism"};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gpfw-accept";
  fs::create_directories(dir);

  struct Job {
    std::string config;
    TraceFormat format;
  };
  const std::vector<Job> jobs = {
      {"problem = lpl2d:p=0.5\nalgorithm = gpa2\n", TraceFormat::jsonl},
      {"problem = quad:1,2,10\nalgorithm = sphere-gpa\nx0 = random:3\n", TraceFormat::csv},
      {"problem = quad:1,2,3\nalgorithm = gpa3\nx0 = registry-default\n", TraceFormat::jsonl},
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string bytes[2];
    for (int rep = 0; rep < 2; ++rep) {
      RunConfig cfg = parse_config(jobs[j].config);
      cfg.format = jobs[j].format;
      const Problem pr = lookup_problem(cfg.problem);
      validate_config(cfg, pr);
      const Vector x0 = resolve_x0(cfg.x0, pr);
      const Trace tr = dispatch_run(cfg, pr, x0);
      const fs::path path =
          dir / ("trace-" + std::to_string(j) + "-" + std::to_string(rep) +
                 (jobs[j].format == TraceFormat::jsonl ? ".jsonl" : ".csv"));
      TraceHeaderInfo info;
      info.problem = pr.id;
      info.algorithm = cfg.algorithm;
      info.config_echo = cfg.echo;
      emit_trace(tr, jobs[j].format, path.string(), info);
      bytes[rep] = slurp(path);
    }
    if (bytes[0].empty() || bytes[0] != bytes[1]) {
      r.detail = "job " + std::to_string(j) + ": trace files differ between identical runs";
      return r;
    }
  }
  r.pass = true;
  r.detail = std::to_string(jobs.size()) + " run pairs byte-identical (jsonl and csv)";
  return r;
}

}  // namespace accept

/// Runs the acceptance criteria (optionally filtered by id substring), prints
/// one PASS/FAIL line per criterion, and returns the process exit code:
/// 0 iff every selected criterion passes.
inline int acceptance_suite(const std::vector<std::string>& filter = {},
                            std::ostream& out = std::cout) {
  using Criterion = std::function<CriterionResult()>;
  // already sorted by id
  const std::vector<std::pair<std::string, Criterion>> all = {
      {"c01-gpa1-lyapunov", accept::c01_gpa1_lyapunov},
      {"c02-stationary-steps", accept::c02_stationary_steps},
      {"c03-per-step-bound", accept::c03_per_step_bound},
      {"c04-eigmin-rate", accept::c04_eigmin_rate},
      {"c05-gradient-domination", accept::c05_gradient_domination},
      {"c06-lpl-exponents", accept::c06_lpl_exponents},
      {"c07-gpa2-decrease", accept::c07_gpa2_decrease},
      {"c08-gpa3-superlinear", accept::c08_gpa3_superlinear},
      {"c09-ffw-linear-rate", accept::c09_ffw_linear_rate},
      {"c10-ffw-contraction", accept::c10_ffw_contraction},
      {"c11-minstat", accept::c11_minstat},
      {"c12-e2-failure", accept::c12_e2_failure},
      {"c13-theta-calculator", accept::c13_theta_calculator},
      {"c14-derivative-hygiene", accept::c14_derivative_hygiene},
      {"c15-determinism", accept::c15_determinism},
  };
  auto selected = [&](const std::string& id) {
    if (filter.empty()) return true;
    for (const auto& f : filter)
      if (id.find(f) != std::string::npos) return true;
    return false;
  };
  int failures = 0;
  int ran = 0;
  for (const auto& [id, fn] : all) {
    if (!selected(id)) continue;
    ++ran;
    CriterionResult res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.id = id;
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    out << (res.pass ? "PASS " : "FAIL ") << id << ": " << res.detail << '\n';
    if (!res.pass) ++failures;
  }
  out << ran << " criteria, " << failures << " failed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace gpfw

#endif  // GPFW_ACCEPTANCE_HPP_
