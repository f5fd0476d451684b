#ifndef GPFW_GEOMETRY_HPP_
#define GPFW_GEOMETRY_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <variant>

#include "gpfw/errors.hpp"

namespace gpfw {

using Vector = Eigen::VectorXd;

inline void require_finite(const Vector& x, const char* where) {
  if (!x.allFinite()) throw NonFiniteInput(std::string(where) + ": non-finite vector");
}

// Default absolute tolerance on the membership residual for on-surface
// pre-checks. Retraction noise accumulates but stays far below this.
inline constexpr double kSurfaceTol = 1e-8;

struct SphereSurface {
  int n;
  double radius = 1.0;
};

/// Level-set surface {x | g(x) = 0}, proximally smooth with constant R.
/// m_lower is a certified lower bound on ||g'(x)|| on the surface; when the
/// Lipschitz constant of g' is known, R may be defaulted to m_lower / L1g.
struct LevelSetSurface {
  std::function<double(const Vector&)> g;
  std::function<Vector(const Vector&)> grad_g;
  double R;
  double m_lower = 0.0;
  // Sampling hints: quasi-random surface samples are taken by bisecting the
  // radial chord [center + r_inner*dir, center + r_outer*dir].
  Vector sample_center;
  double sample_r_inner = 0.0;
  double sample_r_outer = 0.0;
};

/// Boundary of a strongly convex ball of radius r: exposes the support-point
/// (linear minimization) oracle.
struct BallBoundarySurface {
  Vector center;
  double r;
};

using Surface = std::variant<SphereSurface, LevelSetSurface, BallBoundarySurface>;

inline Vector project_sphere(const Vector& x, double radius) {
  require_finite(x, "project_sphere");
  const double nx = x.norm();
  if (nx == 0.0) throw ZeroVector("project_sphere: projection is set-valued at the center");
  return (radius / nx) * x;
}

inline double membership_residual(const Surface& surface, const Vector& x) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SphereSurface>)
          return std::abs(x.norm() - s.radius);
        else if constexpr (std::is_same_v<S, LevelSetSurface>)
          return std::abs(s.g(x));
        else
          return std::abs((x - s.center).norm() - s.r);
      },
      surface);
}

inline Vector unit_normal(const Surface& surface, const Vector& x) {
  require_finite(x, "unit_normal");
  if (membership_residual(surface, x) > kSurfaceTol)
    throw OffSurface("unit_normal: point is not on the surface");
  return std::visit(
      [&](const auto& s) -> Vector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SphereSurface>) {
          return x / x.norm();
        } else if constexpr (std::is_same_v<S, LevelSetSurface>) {
          const Vector gp = s.grad_g(x);
          const double ng = gp.norm();
          if (ng == 0.0) throw DegenerateNormal("unit_normal: g'(x) = 0");
          return gp / ng;
        } else {
          return (x - s.center) / s.r;
        }
      },
      surface);
}

inline Vector tangent_project(const Surface& surface, const Vector& x, const Vector& v) {
  require_finite(v, "tangent_project");
  const Vector p = unit_normal(surface, x);
  return v - v.dot(p) * p;
}

/// Bisection of the segment [A, B] against the surface g = 0. Returns a point
/// with |g| <= tol * max(1, |g(A)|, |g(B)|). The segment endpoints must
/// straddle the surface (or one of them lie on it).
inline Vector segment_surface_intersect(const LevelSetSurface& surface, const Vector& A,
                                        const Vector& B, double tol) {
  require_finite(A, "segment_surface_intersect");
  require_finite(B, "segment_surface_intersect");
  double ga = surface.g(A);
  double gb = surface.g(B);
  const double scale = std::max({1.0, std::abs(ga), std::abs(gb)});
  if (std::abs(ga) <= tol * scale) return A;
  if (std::abs(gb) <= tol * scale) return B;
  if (ga * gb > 0.0)
    throw NoSignChange("segment_surface_intersect: g has the same sign at both endpoints");

  Vector lo = A, hi = B;
  const double tol_x = 1e-14 * (B - A).norm();
  Vector mid = 0.5 * (lo + hi);
  // at most ceil(log2(|B-A|/tol_x)) + 2 halvings
  for (int it = 0; it < 64; ++it) {
    mid = 0.5 * (lo + hi);
    const double gm = surface.g(mid);
    if (std::abs(gm) <= tol * scale || (hi - lo).norm() <= tol_x) return mid;
    if (ga * gm <= 0.0) {
      hi = mid;
      gb = gm;
    } else {
      lo = mid;
      ga = gm;
    }
  }
  return mid;
}

inline Vector support_point(const BallBoundarySurface& surface, const Vector& d) {
  require_finite(d, "support_point");
  const double nd = d.norm();
  if (nd == 0.0) throw ZeroDirection("support_point: every boundary point is a maximizer");
  return surface.center + (surface.r / nd) * d;
}

/// Wrap a centered sphere as a level-set surface g(x) = (|x|^2 - R^2)/2,
/// so that the bisection retraction machinery applies to it.
inline LevelSetSurface sphere_as_level_set(const SphereSurface& s) {
  LevelSetSurface ls;
  const double radius = s.radius;
  ls.g = [radius](const Vector& x) { return 0.5 * (x.squaredNorm() - radius * radius); };
  ls.grad_g = [](const Vector& x) { return x; };
  ls.R = radius;
  ls.m_lower = radius;
  ls.sample_center = Vector::Zero(s.n);
  ls.sample_r_inner = 0.5 * radius;
  ls.sample_r_outer = 1.5 * radius;
  return ls;
}

}  // namespace gpfw

#endif  // GPFW_GEOMETRY_HPP_
