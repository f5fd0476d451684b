#ifndef GPFW_PROBLEMS_HPP_
#define GPFW_PROBLEMS_HPP_

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gpfw/geometry.hpp"
#include "gpfw/objective.hpp"

namespace gpfw {

/// A registered test problem: feasible surface, objective, and whatever the
/// analysis layer can use as ground truth (minimizer, minimum value, LPL
/// exponent, theoretical contraction rate).
struct Problem {
  std::string id;
  Surface surface;
  Objective obj;
  int dim = 0;
  Vector default_x0;
  std::optional<Vector> minimizer;
  std::optional<double> f0;
  std::optional<double> lpl_alpha;
  std::optional<double> theoretical_q;  // per-point linear rate, when the theory gives one
};

/// Circle x^2 + (y - 1/2)^2 = 1/4 with f = y - p x^2; minimizer (0,0), f0 = 0.
/// LPL exponent 2 for p in (0,1), 4/3 for p = 1.
inline Problem make_lpl2d(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigInvalid("lpl2d: p must be in (0, 1]");
  Problem pr;
  pr.id = "lpl2d:p=" + std::to_string(p);
  LevelSetSurface ls;
  ls.g = [](const Vector& x) {
    return x(0) * x(0) + (x(1) - 0.5) * (x(1) - 0.5) - 0.25;
  };
  ls.grad_g = [](const Vector& x) {
    Vector g(2);
    g << 2.0 * x(0), 2.0 * (x(1) - 0.5);
    return g;
  };
  ls.R = 0.5;
  ls.m_lower = 1.0;  // ||g'|| = 2 * 1/2 on the circle
  ls.sample_center = (Vector(2) << 0.0, 0.5).finished();
  ls.sample_r_inner = 0.25;
  ls.sample_r_outer = 0.75;
  pr.surface = ls;

  pr.obj.f = [p](const Vector& x) { return x(1) - p * x(0) * x(0); };
  pr.obj.grad = [p](const Vector& x) {
    Vector g(2);
    g << -2.0 * p * x(0), 1.0;
    return g;
  };
  pr.obj.hess = [p](const Vector&) {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = -2.0 * p;
    return H;
  };
  pr.obj.L = std::sqrt(p * p + 1.0);  // max ||f'|| over the circle
  pr.obj.L1 = 2.0 * p;
  pr.dim = 2;
  pr.default_x0 = (Vector(2) << 0.5 * std::sin(2.0), 0.5 - 0.5 * std::cos(2.0)).finished();
  pr.minimizer = Vector::Zero(2);
  pr.f0 = 0.0;
  pr.lpl_alpha = (p < 1.0) ? 2.0 : 4.0 / 3.0;
  return pr;
}

/// Boundary of B_r((0,-r)) with f(x,y) = psi(x) - y, psi(x) = -x^2/2 for
/// x <= 0 and 0 otherwise. psi is C^1 but not C^2, so no Hessian oracle.
/// The origin is stationary but not a minimum; the minimizer is
/// (-sqrt(r^2-1), 1-r) with value -(r-1)^2/2.
inline Problem make_minstat(double r) {
  if (!(r > 1.0)) throw ConfigInvalid("minstat: requires r > 1");
  Problem pr;
  pr.id = "minstat:r=" + std::to_string(r);
  BallBoundarySurface bb;
  bb.center = (Vector(2) << 0.0, -r).finished();
  bb.r = r;
  pr.surface = bb;
  pr.obj.f = [](const Vector& x) {
    const double psi = x(0) <= 0.0 ? -0.5 * x(0) * x(0) : 0.0;
    return psi - x(1);
  };
  pr.obj.grad = [](const Vector& x) {
    Vector g(2);
    g << (x(0) <= 0.0 ? -x(0) : 0.0), -1.0;
    return g;
  };
  pr.obj.L = std::sqrt(r * r + 1.0);
  pr.obj.L1 = 1.0;
  pr.dim = 2;
  pr.default_x0 = bb.center + r * (Vector(2) << std::sin(2.0), std::cos(2.0)).finished();
  pr.minimizer = (Vector(2) << -std::sqrt(r * r - 1.0), 1.0 - r).finished();
  pr.f0 = -0.5 * (r - 1.0) * (r - 1.0);
  return pr;
}

/// Circle of radius 1/2 (boundary of a strongly convex disk) with f = y - x^2;
/// the m = 1 boundary case where the full-step Frank-Wolfe rate degenerates.
inline Problem make_e2() {
  Problem pr;
  pr.id = "e2";
  BallBoundarySurface bb;
  bb.center = (Vector(2) << 0.0, 0.5).finished();
  bb.r = 0.5;
  pr.surface = bb;
  pr.obj.f = [](const Vector& x) { return x(1) - x(0) * x(0); };
  pr.obj.grad = [](const Vector& x) {
    Vector g(2);
    g << -2.0 * x(0), 1.0;
    return g;
  };
  pr.obj.hess = [](const Vector&) {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = -2.0;
    return H;
  };
  pr.obj.L = std::sqrt(2.0);
  pr.obj.L1 = 2.0;
  pr.dim = 2;
  pr.default_x0 = (Vector(2) << 0.1, 0.5 - std::sqrt(0.25 - 0.01)).finished();
  pr.minimizer = Vector::Zero(2);
  pr.f0 = 0.0;
  pr.lpl_alpha = 4.0 / 3.0;
  return pr;
}

/// f(x) = (c, x) + (eps/2) ||x - d||^2 on the unit sphere, with c chosen so
/// that ||f'(0)|| = 1 > 2 L1 = 2 eps: the approximately-linear regime where
/// full-step Frank-Wolfe contracts with rate eps / (1 - eps).
inline Problem make_approx_linear(double eps = 0.1) {
  if (!(eps > 0.0 && eps < 0.5)) throw ConfigInvalid("approxlinear: requires 0 < eps < 1/2");
  Problem pr;
  pr.id = "approxlinear:eps=" + std::to_string(eps);
  pr.surface = SphereSurface{3, 1.0};
  const Vector d = (Vector(3) << 0.3, 0.2, 0.1).finished();
  const Vector v = (Vector(3) << 0.0, 0.0, -1.0).finished();  // f'(0), unit norm
  const Vector c = v + eps * d;
  pr.obj.f = [c, d, eps](const Vector& x) {
    return c.dot(x) + 0.5 * eps * (x - d).squaredNorm();
  };
  pr.obj.grad = [c, d, eps](const Vector& x) { return Vector(c + eps * (x - d)); };
  pr.obj.hess = [eps](const Vector&) { return Matrix(eps * Matrix::Identity(3, 3)); };
  pr.obj.L = 1.0 + eps;  // ||f'(x)|| <= ||f'(0)|| + eps on S_1
  pr.obj.L1 = eps;
  pr.dim = 3;
  pr.default_x0 = (Vector(3) << 1.0, 0.0, 0.0).finished();
  pr.theoretical_q = eps / (1.0 - eps);  // L1 / (||f'(0)|| - L1)
  return pr;
}

/// Strongly convex f(x) = ||x - xbar||^2 over a level-set ellipse; the
/// registered instance satisfies L / kappa < R (kappa = 2, R = 0.9).
/// L is valid on the level set f <= f(default_x0), which every monotone
/// solver stays inside.
inline Problem make_scf() {
  Problem pr;
  pr.id = "scf";
  const double a = 1.1, b = 1.0;
  LevelSetSurface ls;
  ls.g = [a, b](const Vector& x) {
    return (x(0) / a) * (x(0) / a) + (x(1) / b) * (x(1) / b) - 1.0;
  };
  ls.grad_g = [a, b](const Vector& x) {
    Vector g(2);
    g << 2.0 * x(0) / (a * a), 2.0 * x(1) / (b * b);
    return g;
  };
  ls.R = 0.9;  // min curvature radius of the ellipse is b^2/a ~ 0.909
  ls.m_lower = 2.0 / a;
  ls.sample_center = Vector::Zero(2);
  ls.sample_r_inner = 0.5;
  ls.sample_r_outer = 1.3;
  pr.surface = ls;
  const Vector xbar = (Vector(2) << 1.4, 0.1).finished();
  pr.obj.f = [xbar](const Vector& x) { return (x - xbar).squaredNorm(); };
  pr.obj.grad = [xbar](const Vector& x) { return Vector(2.0 * (x - xbar)); };
  pr.obj.hess = [](const Vector&) { return Matrix(2.0 * Matrix::Identity(2, 2)); };
  pr.obj.L = 1.4;
  pr.obj.L1 = 2.0;
  pr.dim = 2;
  pr.default_x0 = (Vector(2) << a * std::cos(0.6), b * std::sin(0.6)).finished();
  return pr;
}

/// Linear objective (c, x) on the unit sphere in R^3; minimizer -c/||c||.
inline Problem make_sphere_linear() {
  Problem pr;
  pr.id = "sphere-linear";
  pr.surface = SphereSurface{3, 1.0};
  const Vector c = (Vector(3) << 0.0, 0.0, 1.0).finished();
  pr.obj.f = [c](const Vector& x) { return c.dot(x); };
  pr.obj.grad = [c](const Vector&) { return c; };
  pr.obj.hess = [](const Vector&) { return Matrix(Matrix::Zero(3, 3)); };
  pr.obj.L = 1.0;
  pr.obj.L1 = 1e-6;  // the oracle requires a positive constant
  pr.dim = 3;
  pr.default_x0 = (Vector(3) << 1.0, 0.0, 0.0).finished();
  pr.minimizer = Vector(-c);
  pr.f0 = -1.0;
  return pr;
}

/// (Ax, x) on the unit sphere; ground truth from the Jacobi spectrum.
inline Problem make_quadratic_sphere(const Matrix& A, const std::string& id) {
  QuadraticForm qf(A);
  Problem pr;
  pr.id = id;
  pr.surface = SphereSurface{static_cast<int>(A.rows()), 1.0};
  pr.obj = qf.objective();
  pr.dim = static_cast<int>(A.rows());
  pr.default_x0 = Vector::Ones(pr.dim).normalized();
  pr.minimizer = Vector(qf.eigenvectors().col(0));
  pr.f0 = qf.lambda_min();
  pr.lpl_alpha = 2.0;
  return pr;
}

namespace detail {

inline double parse_param(const std::string& s, const std::string& key, double fallback) {
  const auto pos = s.find(key + "=");
  if (pos == std::string::npos) return fallback;
  return std::stod(s.substr(pos + key.size() + 1));
}

}  // namespace detail

/// Resolve a problem id such as "lpl2d:p=0.5", "quad:1,2,10", "minstat:r=2",
/// or a path to a plain-text symmetric matrix file.
inline Problem lookup_problem(const std::string& id) {
  if (id.rfind("lpl2d", 0) == 0) return make_lpl2d(detail::parse_param(id, "p", 0.5));
  if (id.rfind("minstat", 0) == 0) return make_minstat(detail::parse_param(id, "r", 2.0));
  if (id == "e2") return make_e2();
  if (id.rfind("approxlinear", 0) == 0)
    return make_approx_linear(detail::parse_param(id, "eps", 0.1));
  if (id == "scf") return make_scf();
  if (id == "sphere-linear") return make_sphere_linear();
  if (id.rfind("quad:", 0) == 0) {
    std::vector<double> diag;
    std::string rest = id.substr(5);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      diag.push_back(std::stod(rest.substr(pos, next - pos)));
      pos = next + 1;
    }
    if (diag.empty()) throw ValidationError("quad: empty diagonal");
    Matrix A = Matrix::Zero(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) A(i, i) = diag[i];
    return make_quadratic_sphere(A, id);
  }
  if (std::filesystem::exists(id))
    return make_quadratic_sphere(load_matrix_file(id), id);
  throw ValidationError("unknown problem id: " + id);
}

/// Every problem exercised by the acceptance and hygiene suites.
inline std::vector<Problem> registered_problems() {
  std::vector<Problem> out;
  out.push_back(make_lpl2d(0.5));
  out.push_back(make_lpl2d(1.0));
  out.push_back(make_minstat(2.0));
  out.push_back(make_e2());
  out.push_back(make_approx_linear());
  out.push_back(make_scf());
  out.push_back(make_sphere_linear());
  out.push_back(lookup_problem("quad:1,2,10"));
  out.push_back(lookup_problem("quad:1,2,3"));
  return out;
}

}  // namespace gpfw

#endif  // GPFW_PROBLEMS_HPP_
