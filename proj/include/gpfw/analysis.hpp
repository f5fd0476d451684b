#ifndef GPFW_ANALYSIS_HPP_
#define GPFW_ANALYSIS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "gpfw/geometry.hpp"
#include "gpfw/objective.hpp"
#include "gpfw/rng.hpp"
#include "gpfw/sampling.hpp"

namespace gpfw {

// Values below this are treated as numerically underflowed and skipped by the
// rate fitter.
inline constexpr double kRateFloor = 1e-14;

struct RateReport {
  double fitted_q = 0.0;
  std::optional<double> theoretical_q;
  int tail_start = 0;
  double residual = 0.0;  // RMS of the log-domain fit
};

/// Least-squares geometric rate of a positive sequence over its tail
/// (default: last half), fitted_q = exp(slope of log values).
inline RateReport fit_linear_rate(const std::vector<double>& values,
                                  double tail_fraction = 0.5) {
  const int n = static_cast<int>(values.size());
  const int tail_start = static_cast<int>(n * (1.0 - tail_fraction));
  std::vector<double> ks, logs;
  for (int i = tail_start; i < n; ++i) {
    if (values[i] <= 0.0)
      throw NonPositiveValue("fit_linear_rate: sequence must be positive");
    if (values[i] < kRateFloor) continue;  // underflowed
    ks.push_back(static_cast<double>(i));
    logs.push_back(std::log(values[i]));
  }
  if (ks.size() < 4) throw TooShort("fit_linear_rate: fewer than 4 usable tail entries");

  const int m = static_cast<int>(ks.size());
  double km = 0.0, lm = 0.0;
  for (int i = 0; i < m; ++i) {
    km += ks[i];
    lm += logs[i];
  }
  km /= m;
  lm /= m;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < m; ++i) {
    num += (ks[i] - km) * (logs[i] - lm);
    den += (ks[i] - km) * (ks[i] - km);
  }
  const double slope = den > 0.0 ? num / den : 0.0;
  double rms = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = logs[i] - (lm + slope * (ks[i] - km));
    rms += r * r;
  }
  RateReport out;
  out.fitted_q = std::exp(slope);
  out.tail_start = tail_start;
  out.residual = std::sqrt(rms / m);
  return out;
}

struct RateBoundReport {
  bool pass = true;
  double worst_ratio = 0.0;  // worst per-step ratio value_{k+1} / value_k
};

/// Checks value_{k+1} <= q * value_k * (1 + slack) along the sequence.
inline RateBoundReport check_rate_bound(const std::vector<double>& values,
                                        double theoretical_q, double slack) {
  RateBoundReport out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] <= 0.0) continue;
    const double ratio = values[i + 1] / values[i];
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (values[i + 1] > theoretical_q * values[i] * (1.0 + slack)) out.pass = false;
  }
  return out;
}

struct LplEstimate {
  double mu_hat = std::numeric_limits<double>::infinity();
  double alpha = 2.0;
  int n_samples = 0;
  Vector worst_point;
  double beta = 0.0;
};

/// Restriction of the sphere sample set to {sum of the first k coordinates
/// squared >= tau^2} (the H_tau half of the sphere, k = 1 in the simple
/// eigenvalue case).
struct HalfSpaceRestriction {
  int k = 1;
  double tau = 0.0;
};

/// Quasi-random unit-sphere samples restricted to H_tau: the norm of the
/// leading k-block of coordinates is at least tau.
inline std::vector<Vector> sample_htau(int n, const HalfSpaceRestriction& h, int n_samples,
                                       std::uint64_t seed) {
  const int kdim = h.k;
  const double tau = h.tau;
  QuasiRandom qr(2 * n + 2, seed);
  std::vector<Vector> points;
  points.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const Vector u = qr.next_point();
    const double rho = tau + (1.0 - tau) * u(0);
    Vector x = Vector::Zero(n);
    // direction within the leading k-block, scaled to norm rho
    Vector w1(kdim);
    for (int j = 0; j < kdim; ++j) w1(j) = u(1 + j) - 0.5;
    if (w1.norm() == 0.0) w1(0) = 1.0;
    x.head(kdim) = rho * w1.normalized();
    if (kdim < n) {
      SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
      Vector w2 = mix.gaussian_vector(n - kdim);
      if (w2.norm() == 0.0) w2(0) = 1.0;
      x.tail(n - kdim) = std::sqrt(std::max(0.0, 1.0 - rho * rho)) * w2.normalized();
    }
    points.push_back(std::move(x));
  }
  return points;
}

/// Empirical LPL constant: the minimal ratio ||P_T f'||^alpha / (f - f0)
/// over quasi-random surface samples in the level set f <= beta. Samples with
/// f - f0 <= 1e-12 (1 + |f0|) are excluded (the ratio is 0/0 there).
inline LplEstimate lpl_mu_estimate(const Surface& surface, const Objective& obj,
                                   double f0, double alpha, double beta, int n_samples,
                                   std::uint64_t seed,
                                   std::optional<HalfSpaceRestriction> restrict_to = {}) {
  LplEstimate out;
  out.alpha = alpha;
  out.beta = beta;
  const double floor = 1e-12 * (1.0 + std::abs(f0));

  std::vector<Vector> points;
  if (restrict_to) {
    const auto* sp = std::get_if<SphereSurface>(&surface);
    if (!sp) throw ConfigInvalid("lpl_mu_estimate: H_tau sampling needs a sphere");
    points = sample_htau(sp->n, *restrict_to, n_samples, seed);
    for (auto& x : points) x *= sp->radius;
  } else {
    points = sample_surface(surface, n_samples, seed);
  }

  for (const auto& x : points) {
    const double fx = obj.f(x);
    if (fx > beta) continue;
    const double gap = fx - f0;
    if (gap <= floor) continue;
    const double pt = tangent_project(surface, x, obj.grad(x)).norm();
    const double ratio = std::pow(pt, alpha) / gap;
    ++out.n_samples;
    if (ratio < out.mu_hat) {
      out.mu_hat = ratio;
      out.worst_point = x;
    }
  }
  if (out.n_samples == 0)
    throw NoSamplesInLevel("lpl_mu_estimate: no samples in the level set above the ratio floor");
  return out;
}

/// LPL exponent along a path approaching the minimizer: slope of log(f - f0)
/// against log ||P_T f'|| (so that ||P_T f'||^alpha is commensurate with
/// f - f0). The path must span at least 3 decades in f - f0.
inline double lpl_exponent_estimate(const Surface& surface, const Objective& obj,
                                    double f0, const std::vector<Vector>& path) {
  std::vector<double> X, Y;
  for (const auto& x : path) {
    const double gap = obj.f(x) - f0;
    const double pt = tangent_project(surface, x, obj.grad(x)).norm();
    if (gap <= 0.0 || pt <= 0.0) continue;
    X.push_back(std::log(pt));
    Y.push_back(std::log(gap));
  }
  if (X.size() < 3) throw InsufficientRange("lpl_exponent_estimate: too few usable points");
  const auto [ymin, ymax] = std::minmax_element(Y.begin(), Y.end());
  if (*ymax - *ymin < 3.0 * std::log(10.0))
    throw InsufficientRange("lpl_exponent_estimate: f - f0 spans fewer than 3 decades");

  const int m = static_cast<int>(X.size());
  double xm = 0.0, ym = 0.0;
  for (int i = 0; i < m; ++i) {
    xm += X[i];
    ym += Y[i];
  }
  xm /= m;
  ym /= m;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < m; ++i) {
    num += (X[i] - xm) * (Y[i] - ym);
    den += (X[i] - xm) * (X[i] - xm);
  }
  return num / den;
}

/// Geometrically spaced points on the LPL2D circle approaching the minimizer
/// at angle 0; plumbing for the exponent estimator.
inline std::vector<Vector> lpl2d_angle_path(double theta_max, double theta_min,
                                            int n_points) {
  std::vector<Vector> path;
  const double ratio = std::pow(theta_min / theta_max, 1.0 / (n_points - 1));
  double th = theta_max;
  for (int i = 0; i < n_points; ++i, th *= ratio) {
    Vector x(2);
    const double s = std::sin(0.5 * th);
    x << 0.5 * std::sin(th), s * s;  // (1 - cos th)/2 without cancellation
    path.push_back(x);
  }
  return path;
}

/// Distance from -f'(x) to the normal cone N(Q, x): the tangential norm for
/// codimension-1 surfaces (cone = full line), the ray distance for ball
/// boundaries (cone = outward ray).
inline double stationarity_distance(const Surface& surface, const Objective& obj,
                                    const Vector& x) {
  if (membership_residual(surface, x) > kSurfaceTol)
    throw OffSurface("stationarity_distance: point is not on the surface");
  const Vector g = obj.grad(x);
  const Vector p = unit_normal(surface, x);
  if (std::holds_alternative<BallBoundarySurface>(surface)) {
    const Vector v = -g;  // distance from -f'(x) to the ray {lambda p : lambda >= 0}
    const double along = v.dot(p);
    if (along <= 0.0) return v.norm();
    return (v - along * p).norm();
  }
  return (g - g.dot(p) * p).norm();
}

/// h(theta) = 2 sin(arcsin(theta)/2), computed in the cancellation-free form
/// theta * sqrt(2 / (1 + sqrt(1 - theta^2))); h(1) = sqrt(2) exactly.
inline double ffw_h(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw ThetaOutOfRange("ffw_h: theta must be in [0, 1]");
  return theta * std::sqrt(2.0 / (1.0 + std::sqrt(1.0 - theta * theta)));
}

/// theta_m: the solution of h(theta)/theta = m for m in (1, sqrt(2)], and 1
/// for m > sqrt(2). Solved by bisection on the increasing map
/// theta -> h(theta)/theta.
inline double ffw_theta_m(double m) {
  if (!(m > 1.0)) throw DominanceTooWeak("ffw_theta_m: requires m > 1");
  if (m > std::numbers::sqrt2) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = mid > 0.0 ? ffw_h(mid) / mid : 1.0;
    if (v < m)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-17) break;
  }
  return 0.5 * (lo + hi);
}

/// Local Frank-Wolfe contraction factor h(theta) / (theta m), in (0, 1) on
/// its whole domain theta in (0, theta_m).
inline double ffw_local_rate(double m, double theta) {
  if (!(m > 1.0)) throw DominanceTooWeak("ffw_local_rate: requires m > 1");
  const double tm = ffw_theta_m(m);
  if (!(theta > 0.0 && theta < tm))
    throw ThetaOutOfRange("ffw_local_rate: theta must be in (0, theta_m)");
  return ffw_h(theta) / (theta * m);
}

}  // namespace gpfw

#endif  // GPFW_ANALYSIS_HPP_
