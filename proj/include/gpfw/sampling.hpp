#ifndef GPFW_SAMPLING_HPP_
#define GPFW_SAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "gpfw/geometry.hpp"
#include "gpfw/rng.hpp"

namespace gpfw {

/// Deterministic quasi-random surface samples. Spheres and ball boundaries
/// get normalized low-discrepancy directions; level-set surfaces get sphere
/// directions retracted by bisection along the radial chord
/// [center + r_inner * dir, center + r_outer * dir].
inline std::vector<Vector> sample_surface(const Surface& surface, int n_samples,
                                          std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(n_samples);
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SphereSurface>) {
          QuasiRandom qr = make_sphere_sampler(s.n, seed);
          for (int i = 0; i < n_samples; ++i)
            out.push_back(s.radius * qr.next_unit_vector(s.n));
        } else if constexpr (std::is_same_v<S, BallBoundarySurface>) {
          const int n = static_cast<int>(s.center.size());
          QuasiRandom qr = make_sphere_sampler(n, seed);
          for (int i = 0; i < n_samples; ++i)
            out.push_back(s.center + s.r * qr.next_unit_vector(n));
        } else {
          const int n = static_cast<int>(s.sample_center.size());
          QuasiRandom qr = make_sphere_sampler(n, seed);
          for (int i = 0; i < n_samples; ++i) {
            const Vector dir = qr.next_unit_vector(n);
            const Vector a = s.sample_center + s.sample_r_inner * dir;
            const Vector b = s.sample_center + s.sample_r_outer * dir;
            out.push_back(segment_surface_intersect(s, a, b, 1e-13));
          }
        }
      },
      surface);
  return out;
}

}  // namespace gpfw

#endif  // GPFW_SAMPLING_HPP_
