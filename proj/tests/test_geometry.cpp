#include <gtest/gtest.h>

#include <cmath>

#include "gpfw/geometry.hpp"
#include "gpfw/rng.hpp"
#include "gpfw/sampling.hpp"

namespace gpfw {
namespace {

TEST(ProjectSphere, RandomPointsLandOnSphere) {
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = 10.0 * rng.gaussian_vector(4);
    if (x.norm() == 0.0) continue;
    const Vector p = project_sphere(x, 2.5);
    EXPECT_NEAR(p.norm(), 2.5, 1e-12);
    // projection preserves direction
    EXPECT_NEAR((p.normalized() - x.normalized()).norm(), 0.0, 1e-12);
  }
}

TEST(ProjectSphere, CenterThrows) {
  EXPECT_THROW(project_sphere(Vector::Zero(3), 1.0), ZeroVector);
}

TEST(TangentProject, IdempotentAndOrthogonal) {
  const Surface s = SphereSurface{3, 1.0};
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Vector x = rng.unit_vector(3);
    const Vector v = rng.gaussian_vector(3);
    const Vector t = tangent_project(s, x, v);
    EXPECT_NEAR(t.dot(unit_normal(s, x)), 0.0, 1e-12);
    const Vector tt = tangent_project(s, x, t);
    EXPECT_NEAR((tt - t).norm(), 0.0, 1e-12);
  }
}

TEST(UnitNormal, OffSurfaceThrows) {
  const Surface s = SphereSurface{3, 1.0};
  Vector x(3);
  x << 2.0, 0.0, 0.0;
  EXPECT_THROW(unit_normal(s, x), OffSurface);
}

TEST(UnitNormal, BallBoundaryPointsOutward) {
  BallBoundarySurface bb;
  bb.center = (Vector(2) << 1.0, -1.0).finished();
  bb.r = 2.0;
  const Vector x = bb.center + (Vector(2) << 0.0, 2.0).finished();
  const Vector p = unit_normal(Surface(bb), x);
  EXPECT_NEAR(p(0), 0.0, 1e-14);
  EXPECT_NEAR(p(1), 1.0, 1e-14);
}

LevelSetSurface unit_circle() {
  LevelSetSurface ls;
  ls.g = [](const Vector& x) { return x.squaredNorm() - 1.0; };
  ls.grad_g = [](const Vector& x) { return Vector(2.0 * x); };
  ls.R = 1.0;
  ls.m_lower = 2.0;
  ls.sample_center = Vector::Zero(2);
  ls.sample_r_inner = 0.5;
  ls.sample_r_outer = 1.5;
  return ls;
}

TEST(SegmentIntersect, FindsCircleCrossing) {
  const LevelSetSurface ls = unit_circle();
  const Vector a = (Vector(2) << 0.2, 0.1).finished();
  const Vector b = (Vector(2) << 1.7, 0.85).finished();
  const Vector hit = segment_surface_intersect(ls, a, b, 1e-12);
  EXPECT_LE(std::abs(ls.g(hit)), 1e-12 * std::max({1.0, std::abs(ls.g(a)), std::abs(ls.g(b))}));
  EXPECT_NEAR(hit.norm(), 1.0, 1e-10);
}

TEST(SegmentIntersect, EndpointOnSurfaceReturned) {
  const LevelSetSurface ls = unit_circle();
  const Vector a = (Vector(2) << 1.0, 0.0).finished();  // exactly on the circle
  const Vector b = (Vector(2) << 2.0, 0.0).finished();
  const Vector hit = segment_surface_intersect(ls, a, b, 1e-12);
  EXPECT_EQ((hit - a).norm(), 0.0);
}

TEST(SegmentIntersect, NoSignChangeThrows) {
  const LevelSetSurface ls = unit_circle();
  const Vector a = (Vector(2) << 1.5, 0.0).finished();
  const Vector b = (Vector(2) << 2.0, 0.0).finished();
  EXPECT_THROW(segment_surface_intersect(ls, a, b, 1e-12), NoSignChange);
}

TEST(SupportPoint, MaximizesLinearFunctional) {
  BallBoundarySurface bb;
  bb.center = (Vector(3) << 0.5, -0.25, 1.0).finished();
  bb.r = 1.5;
  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Vector d = rng.gaussian_vector(3);
    if (d.norm() == 0.0) continue;
    const Vector s = support_point(bb, d);
    EXPECT_NEAR((s - bb.center).norm(), bb.r, 1e-12);
    for (int j = 0; j < 20; ++j) {
      const Vector y = bb.center + bb.r * rng.unit_vector(3);
      EXPECT_LE(d.dot(y), d.dot(s) + 1e-10);
    }
  }
}

TEST(SupportPoint, ZeroDirectionThrows) {
  BallBoundarySurface bb;
  bb.center = Vector::Zero(2);
  bb.r = 1.0;
  EXPECT_THROW(support_point(bb, Vector::Zero(2)), ZeroDirection);
}

TEST(SphereAsLevelSet, AgreesWithSphereMembership) {
  const SphereSurface sp{3, 2.0};
  const LevelSetSurface ls = sphere_as_level_set(sp);
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vector x = 2.0 * rng.unit_vector(3);
    EXPECT_NEAR(ls.g(x), 0.0, 1e-12);
    EXPECT_NEAR((ls.grad_g(x) - x).norm(), 0.0, 0.0);
  }
}

TEST(SampleSurface, SamplesSatisfyMembership) {
  const std::vector<Surface> surfaces = {
      Surface(SphereSurface{4, 1.0}),
      Surface(BallBoundarySurface{(Vector(2) << 0.0, 0.5).finished(), 0.5}),
      Surface(unit_circle()),
  };
  for (const auto& s : surfaces) {
    for (const auto& x : sample_surface(s, 500, 5)) {
      EXPECT_LE(membership_residual(s, x), 1e-10);
    }
  }
}

TEST(SampleSurface, DeterministicPerSeed) {
  const Surface s = SphereSurface{3, 1.0};
  const auto a = sample_surface(s, 10, 9);
  const auto b = sample_surface(s, 10, 9);
  const auto c = sample_surface(s, 10, 10);
  for (int i = 0; i < 10; ++i) EXPECT_EQ((a[i] - b[i]).norm(), 0.0);
  EXPECT_GT((a[0] - c[0]).norm(), 0.0);
}

}  // namespace
}  // namespace gpfw
