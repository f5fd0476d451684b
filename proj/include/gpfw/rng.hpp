#ifndef GPFW_RNG_HPP_
#define GPFW_RNG_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace gpfw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Splitmix64 stream. Every piece of randomness in the project flows from a
/// single 64-bit seed through this generator so that runs are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    while (u1 <= 0.0) u1 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vector gaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = next_gaussian();
    return v;
  }

  // uniform point on the unit sphere S^{n-1}
  Vector unit_vector(int n) {
    Vector v = gaussian_vector(n);
    double nv = v.norm();
    while (nv == 0.0) {
      v = gaussian_vector(n);
      nv = v.norm();
    }
    return v / nv;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Low-discrepancy point set: the R_d Kronecker sequence (additive recurrence
/// with the generalized golden ratio), with a seed-dependent Cranley-Patterson
/// shift. Deterministic for a given (dim, seed).
class QuasiRandom {
 public:
  QuasiRandom(int dim, std::uint64_t seed) : dim_(dim), alpha_(dim), x_(dim) {
    // generalized golden ratio: unique positive root of x^{d+1} = x + 1
    double phi = 1.5;
    for (int i = 0; i < 64; ++i)
      phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
    SplitMix64 rng(seed);
    double a = 1.0;
    for (int j = 0; j < dim; ++j) {
      a /= phi;
      alpha_(j) = a;
      x_(j) = rng.next_uniform();
    }
  }

  // next point in [0,1)^dim
  Vector next_point() {
    for (int j = 0; j < dim_; ++j) {
      x_(j) += alpha_(j);
      x_(j) -= std::floor(x_(j));
    }
    return x_;
  }

  // Gaussian vector obtained by Box-Muller over consecutive coordinate pairs.
  Vector next_gaussian(int n) {
    const Vector u = next_point();
    Vector g(n);
    for (int i = 0; i < n; i += 2) {
      double u1 = u(i % dim_);
      double u2 = u((i + 1) % dim_);
      if (u1 <= 1e-300) u1 = 1e-300;
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double a = 2.0 * std::numbers::pi * u2;
      g(i) = r * std::cos(a);
      if (i + 1 < n) g(i + 1) = r * std::sin(a);
    }
    return g;
  }

  Vector next_unit_vector(int n) {
    Vector g = next_gaussian(n);
    double ng = g.norm();
    while (ng == 0.0) {
      g = next_gaussian(n);
      ng = g.norm();
    }
    return g / ng;
  }

 private:
  int dim_;
  Vector alpha_;
  Vector x_;
};

/// Quasi-random sampler on the unit sphere in R^n.
inline QuasiRandom make_sphere_sampler(int n, std::uint64_t seed) {
  return QuasiRandom(n + (n % 2), seed);
}

}  // namespace gpfw

#endif  // GPFW_RNG_HPP_
