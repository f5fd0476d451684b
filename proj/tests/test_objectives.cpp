#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <sstream>

#include "gpfw/objective.hpp"
#include "gpfw/problems.hpp"
#include "gpfw/rng.hpp"
#include "gpfw/spectrum.hpp"

namespace gpfw {
namespace {

TEST(JacobiSpectrum, MatchesDiagonal) {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  A(2, 2) = 10.0;
  const Spectrum sp = jacobi_spectrum(A);
  EXPECT_DOUBLE_EQ(sp.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(sp.eigenvalues(1), 2.0);
  EXPECT_DOUBLE_EQ(sp.eigenvalues(2), 10.0);
  EXPECT_NEAR(std::abs(sp.eigenvectors.col(0)(0)), 1.0, 1e-14);
}

TEST(JacobiSpectrum, MatchesEigenOnRandomSymmetric) {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix B(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) B(i, j) = rng.next_gaussian();
    const Matrix A = 0.5 * (B + B.transpose());
    const Spectrum sp = jacobi_spectrum(A);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(A);
    for (int i = 0; i < 5; ++i)
      EXPECT_NEAR(sp.eigenvalues(i), ref.eigenvalues()(i), 1e-11);
    // residual check: A v = lambda v
    for (int i = 0; i < 5; ++i) {
      const Vector v = sp.eigenvectors.col(i);
      EXPECT_NEAR((A * v - sp.eigenvalues(i) * v).norm(), 0.0, 1e-11);
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    }
  }
}

TEST(JacobiSpectrum, RejectsAsymmetric) {
  Matrix A(2, 2);
  A << 1.0, 2.0, 3.0, 4.0;
  EXPECT_THROW(jacobi_spectrum(A), NotSymmetric);
}

TEST(QuadraticForm, GradientAndHessianConsistent) {
  Matrix A(3, 3);
  A << 2.0, 0.5, 0.0, 0.5, 1.0, -0.25, 0.0, -0.25, 3.0;
  const QuadraticForm qf(A);
  const Objective obj = qf.objective();
  SplitMix64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.gaussian_vector(3);
    EXPECT_NEAR(obj.f(x), x.dot(A * x), 1e-12);
    EXPECT_NEAR((obj.grad(x) - 2.0 * A * x).norm(), 0.0, 1e-12);
    EXPECT_LE(fd_gradient_check(obj, x, 1e-6), 1e-7);
  }
  EXPECT_DOUBLE_EQ(qf.f0_on_unit_sphere(), qf.lambda_min());
}

TEST(FdGradientCheck, FlagsWrongGradient) {
  Objective obj;
  obj.f = [](const Vector& x) { return x.squaredNorm(); };
  obj.grad = [](const Vector& x) { return Vector(3.0 * x); };  // wrong scale
  Vector x(2);
  x << 1.0, 2.0;
  EXPECT_GT(fd_gradient_check(obj, x, 1e-6), 1e-2);
}

TEST(ParseMatrix, RoundTrip) {
  std::istringstream in("1 0.5\n0.5 2\n");
  const Matrix A = parse_matrix_text(in);
  EXPECT_EQ(A.rows(), 2);
  EXPECT_DOUBLE_EQ(A(0, 1), 0.5);
}

TEST(ParseMatrix, RejectsNonSquareAndAsymmetric) {
  std::istringstream bad1("1 2 3\n4 5\n");
  EXPECT_THROW(parse_matrix_text(bad1), ParseError);
  std::istringstream bad2("1 2\n3 4\n");
  EXPECT_THROW(parse_matrix_text(bad2), NotSymmetric);
  std::istringstream bad3("");
  EXPECT_THROW(parse_matrix_text(bad3), ParseError);
}

TEST(Problems, RegistryMetadataSane) {
  for (const Problem& pr : registered_problems()) {
    EXPECT_FALSE(pr.id.empty());
    EXPECT_GT(pr.dim, 0);
    EXPECT_GT(pr.obj.L, 0.0);
    EXPECT_GT(pr.obj.L1, 0.0);
    EXPECT_LE(membership_residual(pr.surface, pr.default_x0), 1e-8) << pr.id;
    if (pr.minimizer) {
      EXPECT_LE(membership_residual(pr.surface, *pr.minimizer), 1e-8) << pr.id;
      if (pr.f0) EXPECT_NEAR(pr.obj.f(*pr.minimizer), *pr.f0, 1e-12) << pr.id;
    }
  }
}

TEST(Problems, MinstatHasNoHessian) {
  EXPECT_FALSE(make_minstat(2.0).obj.has_hessian());
}

TEST(Problems, LookupParsesParameters) {
  EXPECT_NEAR(lookup_problem("lpl2d:p=1").obj.L1, 2.0, 0.0);
  EXPECT_NEAR(lookup_problem("approxlinear:eps=0.2").obj.L1, 0.2, 0.0);
  EXPECT_THROW(lookup_problem("nope"), ValidationError);
}

TEST(Problems, QuadraticGroundTruth) {
  const Problem pr = lookup_problem("quad:1,2,10");
  ASSERT_TRUE(pr.f0.has_value());
  EXPECT_DOUBLE_EQ(*pr.f0, 1.0);
  EXPECT_DOUBLE_EQ(pr.obj.L1, 20.0);
}

}  // namespace
}  // namespace gpfw
