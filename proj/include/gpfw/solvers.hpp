#ifndef GPFW_SOLVERS_HPP_
#define GPFW_SOLVERS_HPP_

#include <Eigen/Dense>
#include <Eigen/LU>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpfw/geometry.hpp"
#include "gpfw/objective.hpp"
#include "gpfw/sampling.hpp"
#include "gpfw/spectrum.hpp"

namespace gpfw {

enum class Phase { gradient, newton };
enum class Termination { converged, max_iter, stationary_certificate, error };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::stationary_certificate: return "stationary_certificate";
    default: return "error";
  }
}

inline const char* to_string(Phase p) {
  return p == Phase::gradient ? "gradient" : "newton";
}

/// Per-iteration state. Record k describes the iterate x_k and the step taken
/// from it; the residual z(x) = ||L1 x - f'(x)|| - (L1 x - f'(x), x) is filled
/// for unit-sphere runs, the Newton residual ||F(z_k)|| for GPA3's second
/// phase.
struct IterationRecord {
  int k = 0;
  Vector x;
  double f = 0.0;
  double proj_grad_norm = 0.0;
  double step_norm = 0.0;
  std::optional<double> residual_z;
  std::optional<double> newton_residual;
  std::optional<Phase> phase;
};

struct Trace {
  std::vector<IterationRecord> records;
  Termination termination = Termination::error;
  Vector final_x;
  // Theoretical constants of the run (t0, q, mu, delta, N, ...) for the
  // emitted header; every entry is recomputable from the problem data.
  std::map<std::string, double> constants;
};

struct SolverConfig {
  double t = 0.0;          // 0 selects the per-algorithm default
  double C = 1.0;          // GPA1 penalty constant
  double eps = 1e-3;       // stationary-point target
  int max_iter = 100000;
  double tol_x = 1e-12;    // stop when the step norm drops below this
  double tol_grad = 1e-12; // stop when the projected gradient drops below this
  double tol_newton = 1e-13;
  double bisect_tol = 1e-12;
  std::uint64_t seed = 0;
};

namespace detail {

inline double sphere_residual_z(const Objective& obj, const Vector& x) {
  const Vector v = obj.L1 * x - obj.grad(x);
  return v.norm() - v.dot(x);
}

inline bool is_unit_sphere(const Surface& s) {
  const auto* sp = std::get_if<SphereSurface>(&s);
  return sp && sp->radius == 1.0;
}

inline double proximal_constant(const Surface& s) {
  return std::visit(
      [](const auto& v) -> double {
        using S = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<S, SphereSurface>) return v.radius;
        else if constexpr (std::is_same_v<S, LevelSetSurface>) return v.R;
        else return v.r;
      },
      s);
}

// closed-form metric projection; only spheres and ball boundaries admit one
inline Vector closed_form_project(const Surface& s, const Vector& y) {
  return std::visit(
      [&](const auto& v) -> Vector {
        using S = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<S, SphereSurface>) {
          return project_sphere(y, v.radius);
        } else if constexpr (std::is_same_v<S, BallBoundarySurface>) {
          return Vector(v.center + project_sphere(y - v.center, v.r));
        } else {
          throw ConfigInvalid(
              "no closed-form projection for level-set surfaces; use gpa2");
        }
      },
      s);
}

}  // namespace detail

/// GPA1: x_{k+1} = P_Q(x_k - f'(x_k) / C1) with C1 = C + L1. Requires
/// L / (C + L1) < R so the pre-projection point stays inside the tube where
/// the metric projection is single-valued.
inline Trace gpa1_run(const Surface& surface, const Objective& obj,
                      const SolverConfig& config, const Vector& x0) {
  require_finite(x0, "gpa1_run");
  const double R = detail::proximal_constant(surface);
  const double C1 = config.C + obj.L1;
  if (!(config.C > 0.0) || !(obj.L / C1 < R))
    throw ConfigInvalid("gpa1: requires C > 0 and L / (C + L1) < R");
  if (membership_residual(surface, x0) > kSurfaceTol)
    throw OffSurface("gpa1: x0 is not on the surface");

  Trace trace;
  trace.constants["C1"] = C1;
  trace.constants["C"] = config.C;
  const bool unit_sphere = detail::is_unit_sphere(surface);
  Vector x = x0;
  for (int k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f = obj.f(x);
    rec.proj_grad_norm = tangent_project(surface, x, obj.grad(x)).norm();
    if (unit_sphere) rec.residual_z = detail::sphere_residual_z(obj, x);
    if (rec.proj_grad_norm < config.tol_grad) {
      trace.records.push_back(rec);
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
    const Vector xn = detail::closed_form_project(surface, x - obj.grad(x) / C1);
    rec.step_norm = (xn - x).norm();
    trace.records.push_back(rec);
    x = xn;
    if (rec.step_norm < config.tol_x) {
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  trace.final_x = x;
  return trace;
}

struct StationaryPointResult {
  Vector x;
  int steps = 0;
  Trace trace;
};

/// Runs GPA1 until the step shrinks below delta = eps / (C + 2 L1); the
/// returned point then satisfies dist(f'(x), -N(Q, x)) <= eps, and the step
/// count is bounded by floor(2 Df / (C delta^2)) + 1. Df is estimated from
/// quasi-random surface samples (overestimating Df only weakens the bound).
inline StationaryPointResult stationary_point_solve(const Surface& surface,
                                                    const Objective& obj, double eps,
                                                    double C, const Vector& x0,
                                                    std::uint64_t seed = 0) {
  const double R = detail::proximal_constant(surface);
  if (!(C > 0.0) || !(C > obj.L / R - obj.L1))
    throw ConfigInvalid("stationary_point_solve: requires C > max{0, L/R - L1}");
  const double C1 = C + obj.L1;
  const double delta = eps / (C + 2.0 * obj.L1);

  const auto samples = sample_surface(surface, 10000, seed);
  double mean = 0.0;
  for (const auto& s : samples) mean += obj.f(s);
  mean /= static_cast<double>(samples.size());
  double dev = 0.0;
  for (const auto& s : samples) dev = std::max(dev, std::abs(obj.f(s) - mean));
  const double delta_f = 2.0 * dev * 1.5;
  const double n_bound = std::floor(2.0 * delta_f / (C * delta * delta)) + 1.0;

  StationaryPointResult out;
  out.trace.constants["delta"] = delta;
  out.trace.constants["Delta_f"] = delta_f;
  out.trace.constants["N"] = n_bound;
  out.trace.constants["C"] = C;
  out.trace.constants["eps"] = eps;

  Vector x = x0;
  for (;;) {
    IterationRecord rec;
    rec.k = out.steps;
    rec.x = x;
    rec.f = obj.f(x);
    rec.proj_grad_norm = tangent_project(surface, x, obj.grad(x)).norm();
    const Vector xn = detail::closed_form_project(surface, x - obj.grad(x) / C1);
    rec.step_norm = (xn - x).norm();
    out.trace.records.push_back(rec);
    ++out.steps;
    const bool stop = rec.step_norm < delta;
    x = xn;
    if (stop) break;
    if (static_cast<double>(out.steps) > n_bound + 10.0)
      throw Error("stationary_point_solve: exceeded the theoretical step bound");
  }
  out.x = x;
  out.trace.termination = Termination::converged;
  out.trace.final_x = x;
  return out;
}

/// Constant-step gradient projection on the unit sphere:
/// x_{k+1} = (x_k - t f'(x_k)) / ||x_k - t f'(x_k)||, default t = 1/L1.
inline Trace sphere_gpa_run(const Objective& obj, const SolverConfig& config,
                            const Vector& x0) {
  require_finite(x0, "sphere_gpa_run");
  if (std::abs(x0.norm() - 1.0) > kSurfaceTol)
    throw ConfigInvalid("sphere_gpa: x0 must be a unit vector");
  const double t = config.t > 0.0 ? config.t : 1.0 / obj.L1;

  Trace trace;
  trace.constants["t"] = t;
  Vector x = x0;
  for (int k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f = obj.f(x);
    const Vector g = obj.grad(x);
    rec.proj_grad_norm = (g - g.dot(x) * x).norm();
    rec.residual_z = detail::sphere_residual_z(obj, x);
    if (rec.proj_grad_norm < config.tol_grad) {
      trace.records.push_back(rec);
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
    const Vector v = x - t * g;
    const double nv = v.norm();
    if (nv == 0.0) throw DegenerateStep("sphere_gpa: pre-normalization vector vanished");
    const Vector xn = v / nv;
    rec.step_norm = (xn - x).norm();
    trace.records.push_back(rec);
    x = xn;
    if (rec.step_norm < config.tol_x) {
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  trace.final_x = x;
  return trace;
}

namespace detail {

// one tangent-hyperplane step with bisection retraction (the Lemma 1 segment)
inline Vector gpa2_step(const LevelSetSurface& surface, const Objective& obj, double t,
                        double bisect_tol, const Vector& x, Vector* tangent_grad) {
  const Vector gp = surface.grad_g(x);
  const double ng = gp.norm();
  if (ng == 0.0) throw DegenerateNormal("gpa2: g'(x) = 0");
  const Vector p = gp / ng;
  const Vector fg = obj.grad(x);
  const Vector tang = fg - fg.dot(p) * p;
  if (tangent_grad) *tangent_grad = tang;
  const Vector z = x - t * tang;
  const double dz = (x - z).norm();
  if (dz > surface.R)
    throw StepExceedsReach("gpa2: ||x - z|| > R; step size too large for the geometry");
  const double s = surface.R - std::sqrt(surface.R * surface.R - dz * dz);
  return segment_surface_intersect(surface, z - s * p, z + s * p, bisect_tol);
}

}  // namespace detail

inline double gpa2_default_step(const LevelSetSurface& surface, const Objective& obj) {
  return 1.0 / (obj.L1 + 2.0 * obj.L / surface.R);
}

/// GPA2: step along the tangent hyperplane, then retract by bisecting the
/// normal segment against the surface. Valid for 0 < t < 2 t0 with
/// t0 = 1 / (L1 + 2L/R); the per-step decrease is
/// ||P_T f'||^2 (t - t^2 (L1/2 + L/R)).
inline Trace gpa2_run(const LevelSetSurface& surface, const Objective& obj,
                      const SolverConfig& config, const Vector& x0) {
  require_finite(x0, "gpa2_run");
  const double t0 = gpa2_default_step(surface, obj);
  const double t = config.t > 0.0 ? config.t : t0;
  if (!(t > 0.0 && t < 2.0 * t0))
    throw ConfigInvalid("gpa2: step size must satisfy 0 < t < 2 t0 = 2/(L1 + 2L/R)");
  if (std::abs(surface.g(x0)) > kSurfaceTol)
    throw OffSurface("gpa2: x0 is not on the surface");

  Trace trace;
  trace.constants["t0"] = t0;
  trace.constants["t"] = t;
  trace.constants["q_t"] = t - t * t * (obj.L1 / 2.0 + obj.L / surface.R);
  Vector x = x0;
  for (int k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f = obj.f(x);
    Vector tang;
    const Vector xn = detail::gpa2_step(surface, obj, t, config.bisect_tol, x, &tang);
    rec.proj_grad_norm = tang.norm();
    if (rec.proj_grad_norm < config.tol_grad) {
      trace.records.push_back(rec);
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
    rec.step_norm = (xn - x).norm();
    trace.records.push_back(rec);
    x = xn;
    if (rec.step_norm < config.tol_x) {
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  trace.final_x = x;
  return trace;
}

struct KktResidual {
  Vector F;        // [f'(x) + lambda x; g(x)], g(x) = (|x|^2 - 1)/2
  Matrix Fprime;   // [[f''(x) + lambda I, x], [x^T, 0]]
  double sigma1;   // min |eigenvalue| of Fprime
  double mnew_lhs; // (L1/sigma1^2) sqrt(||f'(x) - (x,f'(x)) x||^2 + g(x)^2)
};

inline KktResidual newton_kkt_residual(const Objective& obj, const Vector& x,
                                       double lambda) {
  if (!obj.has_hessian())
    throw ConfigInvalid("newton_kkt_residual: objective has no Hessian oracle");
  const int n = static_cast<int>(x.size());
  const Vector fg = obj.grad(x);
  const double g = 0.5 * (x.squaredNorm() - 1.0);

  KktResidual out;
  out.F.resize(n + 1);
  out.F.head(n) = fg + lambda * x;
  out.F(n) = g;

  out.Fprime = Matrix::Zero(n + 1, n + 1);
  out.Fprime.topLeftCorner(n, n) = obj.hess(x) + lambda * Matrix::Identity(n, n);
  out.Fprime.col(n).head(n) = x;
  out.Fprime.row(n).head(n) = x.transpose();
  if (!is_symmetric(out.Fprime))
    throw NotSymmetric("newton_kkt_residual: F' is not symmetric");

  const Spectrum sp = jacobi_spectrum(out.Fprime);
  out.sigma1 = sp.eigenvalues.cwiseAbs().minCoeff();
  const Vector pt = fg - fg.dot(x) * x;
  const double fnorm = std::sqrt(pt.squaredNorm() + g * g);
  out.mnew_lhs = out.sigma1 > 0.0 ? obj.L1 / (out.sigma1 * out.sigma1) * fnorm
                                  : std::numeric_limits<double>::infinity();
  return out;
}

/// GPA3 on the unit sphere: GPA2 steps while ||P_T f'|| >= C with
/// C = sigma1^2 / (4 L1), then the modified Newton method on F(z) = 0 with
/// the Jacobian factored once at the switch point.
inline Trace gpa3_run(const Objective& obj, const SolverConfig& config, const Vector& x0) {
  if (!obj.has_hessian()) throw ConfigInvalid("gpa3: objective has no Hessian oracle");
  require_finite(x0, "gpa3_run");
  if (std::abs(x0.norm() - 1.0) > kSurfaceTol)
    throw ConfigInvalid("gpa3: x0 must be a unit vector");

  const int n = static_cast<int>(x0.size());
  const LevelSetSurface sphere_ls = sphere_as_level_set(SphereSurface{n, 1.0});
  const double t0 = gpa2_default_step(sphere_ls, obj);
  const double t = config.t > 0.0 ? config.t : t0;

  Trace trace;
  trace.constants["t0"] = t0;
  trace.constants["t"] = t;
  Vector x = x0;
  int k = 0;
  int switches = 0;
  while (k < config.max_iter) {
    // gradient phase
    bool to_newton = false;
    double switch_C = 0.0;
    while (k < config.max_iter) {
      const Vector fg = obj.grad(x);
      const double lambda = -x.dot(fg);
      const KktResidual kkt = newton_kkt_residual(obj, x, lambda);
      const double sigma_floor =
          1e-10 * kkt.Fprime.cwiseAbs().maxCoeff();
      if (kkt.sigma1 <= sigma_floor)
        throw SingularJacobian("gpa3: sigma1 below the singularity floor");
      switch_C = kkt.sigma1 * kkt.sigma1 / (4.0 * obj.L1);

      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.f = obj.f(x);
      rec.proj_grad_norm = (fg - fg.dot(x) * x).norm();
      rec.residual_z = detail::sphere_residual_z(obj, x);
      rec.phase = Phase::gradient;
      if (rec.proj_grad_norm < switch_C) {
        to_newton = true;
        break;
      }
      const Vector xn = detail::gpa2_step(sphere_ls, obj, t, config.bisect_tol, x, nullptr);
      rec.step_norm = (xn - x).norm();
      trace.records.push_back(rec);
      x = xn;
      ++k;
      if (rec.step_norm < config.tol_x) {
        trace.termination = Termination::converged;
        trace.final_x = x;
        trace.constants["phase_switches"] = switches;
        return trace;
      }
    }
    if (!to_newton) break;

    // Newton phase, Jacobian frozen at the switch point
    ++switches;
    Vector z(n + 1);
    z.head(n) = x;
    z(n) = -x.dot(obj.grad(x));
    KktResidual kkt = newton_kkt_residual(obj, z.head(n), z(n));
    Eigen::PartialPivLU<Matrix> lu(kkt.Fprime);
    trace.constants["switch_C"] = switch_C;
    trace.constants["sigma1_at_switch"] = kkt.sigma1;
    trace.constants["mnew_at_switch"] = kkt.mnew_lhs;

    int grow_streak = 0;
    int newton_steps = 0;
    double prev_norm = std::numeric_limits<double>::infinity();
    bool diverged = false;
    while (k < config.max_iter) {
      const Vector xk = z.head(n);
      const Vector fg = obj.grad(xk);
      Vector F(n + 1);
      F.head(n) = fg + z(n) * xk;
      F(n) = 0.5 * (xk.squaredNorm() - 1.0);
      const double fnorm = F.norm();

      IterationRecord rec;
      rec.k = k;
      rec.x = xk;
      rec.f = obj.f(xk);
      rec.proj_grad_norm = (fg - fg.dot(xk) * xk).norm();
      rec.newton_residual = fnorm;
      rec.phase = Phase::newton;

      if (fnorm <= config.tol_newton) {
        trace.records.push_back(rec);
        trace.termination = Termination::converged;
        trace.final_x = project_sphere(xk, 1.0);
        trace.constants["phase_switches"] = switches;
        trace.constants["lambda_final"] = z(n);
        return trace;
      }
      grow_streak = fnorm > prev_norm ? grow_streak + 1 : 0;
      if (grow_streak >= 5) {
        // NewtonDiverged: fall back to the gradient phase
        trace.records.push_back(rec);
        ++k;
        x = project_sphere(xk, 1.0);
        diverged = true;
        break;
      }
      prev_norm = fnorm;
      ++newton_steps;
      if (newton_steps % 50 == 0) {
        kkt = newton_kkt_residual(obj, z.head(n), z(n));
        lu.compute(kkt.Fprime);
      }
      const Vector zn = z - lu.solve(F);
      rec.step_norm = (zn - z).norm();
      trace.records.push_back(rec);
      z = zn;
      ++k;
    }
    if (!diverged) break;
  }
  trace.termination = Termination::max_iter;
  trace.final_x = x;
  trace.constants["phase_switches"] = switches;
  return trace;
}

/// Full-step Frank-Wolfe: x_{k+1} is the support point of -f'(x_k). On the
/// unit sphere this is the normalized negative gradient. A vanishing gradient
/// is a stationarity certificate, not a tie to break.
inline Trace ffw_run(const Surface& surface, const Objective& obj,
                     const SolverConfig& config, const Vector& x0) {
  require_finite(x0, "ffw_run");
  if (std::holds_alternative<LevelSetSurface>(surface))
    throw ConfigInvalid("ffw: requires a sphere or ball-boundary surface");
  if (membership_residual(surface, x0) > kSurfaceTol)
    throw OffSurface("ffw: x0 is not on the surface");

  const auto support = [&](const Vector& d) -> Vector {
    if (const auto* sp = std::get_if<SphereSurface>(&surface))
      return Vector(sp->radius * d.normalized());
    return support_point(std::get<BallBoundarySurface>(surface), d);
  };

  Trace trace;
  Vector x = x0;
  for (int k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f = obj.f(x);
    const Vector g = obj.grad(x);
    rec.proj_grad_norm = tangent_project(surface, x, g).norm();
    if (g.norm() == 0.0) {
      trace.records.push_back(rec);
      trace.termination = Termination::stationary_certificate;
      trace.final_x = x;
      return trace;
    }
    const Vector xn = support(-g);
    rec.step_norm = (xn - x).norm();
    trace.records.push_back(rec);
    x = xn;
    if (rec.step_norm < config.tol_x) {
      trace.termination = Termination::converged;
      trace.final_x = x;
      return trace;
    }
  }
  trace.termination = Termination::max_iter;
  trace.final_x = x;
  return trace;
}

struct EigminResult {
  double lambda_hat = 0.0;
  Vector v;
  Trace trace;
};

/// Minimal eigenvalue via gradient projection on the unit sphere:
/// x_{k+1} = (x_k - (2/L1) A x_k) / ||...|| with L1 = 2 lambda_n. When
/// lambda_n <= 0 the iteration runs on A + (1 + |lambda_n|) I, which leaves
/// eigenvectors and spectral gaps unchanged.
inline EigminResult eigmin_run(const Matrix& A, const Vector& x0,
                               const SolverConfig& config) {
  QuadraticForm qf(A);  // throws NotSymmetric
  const Vector& lam = qf.eigenvalues();
  const int n = static_cast<int>(A.rows());

  double shift = 0.0;
  if (qf.lambda_max() <= 0.0) shift = 1.0 + std::abs(qf.lambda_max());
  const Matrix As = qf.matrix() + shift * Matrix::Identity(n, n);
  QuadraticForm qs(As);
  Objective obj = qs.objective();
  obj.L1 = 2.0 * qs.lambda_max();  // the step 1/(2 lambda_n) needs lambda_n > 0

  SolverConfig cfg = config;
  cfg.t = 1.0 / obj.L1;
  Trace trace = sphere_gpa_run(obj, cfg, x0.normalized());

  // report on the original matrix
  for (auto& rec : trace.records) rec.f = rec.x.dot(qf.matrix() * rec.x);

  EigminResult out;
  out.v = trace.final_x;
  out.lambda_hat = out.v.dot(qf.matrix() * out.v);
  trace.constants["lambda1_oracle"] = lam(0);
  trace.constants["shift"] = shift;
  if (n >= 2 && lam(1) > lam(0)) {
    const double tau = std::abs(x0.normalized().dot(qf.eigenvectors().col(0)));
    const double span = lam(n - 1) - lam(0);
    trace.constants["tau"] = tau;
    trace.constants["mu"] = 4.0 * tau * tau * (lam(1) - lam(0));
    trace.constants["q"] = 1.0 - tau * tau * (lam(1) - lam(0)) / span;
    trace.constants["q1"] = (lam(n - 1) - lam(1)) / span;
  }
  out.trace = std::move(trace);
  return out;
}

}  // namespace gpfw

#endif  // GPFW_SOLVERS_HPP_
