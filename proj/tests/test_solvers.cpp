#include <gtest/gtest.h>

#include <cmath>

#include "gpfw/problems.hpp"
#include "gpfw/solvers.hpp"

namespace gpfw {
namespace {

TEST(Gpa1, RejectsBadRadiusInequality) {
  const Problem pr = lookup_problem("approxlinear");
  SolverConfig cfg;
  cfg.C = 0.5;  // L/(C + L1) = 1.1/0.6 > R = 1
  EXPECT_THROW(gpa1_run(pr.surface, pr.obj, cfg, pr.default_x0), ConfigInvalid);
}

TEST(Gpa1, RejectsOffSurfaceStart) {
  const Problem pr = lookup_problem("sphere-linear");
  SolverConfig cfg;
  Vector x0(3);
  x0 << 2.0, 0.0, 0.0;
  EXPECT_THROW(gpa1_run(pr.surface, pr.obj, cfg, x0), OffSurface);
}

TEST(Gpa1, MonotoneOnMinstat) {
  const Problem pr = lookup_problem("minstat:r=2");
  SolverConfig cfg;
  cfg.C = 1.2;
  // start on the x < 0 side: the x > 0 basin drains into the stationary
  // trap at the origin, not the minimizer
  const auto& bb = std::get<BallBoundarySurface>(pr.surface);
  const Vector x0 =
      bb.center + bb.r * (Vector(2) << std::sin(-2.0), std::cos(-2.0)).finished();
  const Trace tr = gpa1_run(pr.surface, pr.obj, cfg, x0);
  EXPECT_EQ(tr.termination, Termination::converged);
  for (std::size_t k = 0; k + 1 < tr.records.size(); ++k)
    EXPECT_LE(tr.records[k + 1].f, tr.records[k].f + 1e-12);
  // lands at the registered minimizer
  EXPECT_NEAR((tr.final_x - *pr.minimizer).norm(), 0.0, 1e-6);
}

TEST(StationaryPoint, ResidualMeetsTarget) {
  const Problem pr = lookup_problem("quad:1,2,10");
  const auto res = stationary_point_solve(pr.surface, pr.obj, 1e-2, 1.0, pr.default_x0);
  // delta (C + 2 L1) = eps, by construction of delta
  const double delta = res.trace.constants.at("delta");
  EXPECT_NEAR(delta * (1.0 + 2.0 * pr.obj.L1), 1e-2, 1e-15);
  EXPECT_LE(static_cast<double>(res.steps), res.trace.constants.at("N"));
}

TEST(SphereGpa, ResidualZNonNegativeAndDecreasing) {
  const Problem pr = lookup_problem("quad:1,2,10");
  SolverConfig cfg;
  const Trace tr = sphere_gpa_run(pr.obj, cfg, pr.default_x0);
  EXPECT_EQ(tr.termination, Termination::converged);
  ASSERT_GT(tr.records.size(), 2u);
  for (const auto& rec : tr.records) {
    ASSERT_TRUE(rec.residual_z.has_value());
    EXPECT_GE(*rec.residual_z, -1e-12);
  }
  for (std::size_t k = 0; k + 1 < tr.records.size(); ++k)
    EXPECT_LE(tr.records[k + 1].f, tr.records[k].f + 1e-12);
  // default step is 1/L1
  EXPECT_NEAR(tr.constants.at("t"), 1.0 / pr.obj.L1, 1e-15);
}

TEST(Gpa2, StepSizeWindowEnforced) {
  const Problem pr = lookup_problem("lpl2d:p=0.5");
  const auto& ls = std::get<LevelSetSurface>(pr.surface);
  SolverConfig cfg;
  cfg.t = 2.0 / (pr.obj.L1 + 2.0 * pr.obj.L / ls.R) + 1e-3;  // just above 2 t0
  EXPECT_THROW(gpa2_run(ls, pr.obj, cfg, pr.default_x0), ConfigInvalid);
}

TEST(Gpa2, ConvergesOnCircleAndStaysOnSurface) {
  const Problem pr = lookup_problem("lpl2d:p=0.5");
  const auto& ls = std::get<LevelSetSurface>(pr.surface);
  SolverConfig cfg;
  const Trace tr = gpa2_run(ls, pr.obj, cfg, pr.default_x0);
  EXPECT_EQ(tr.termination, Termination::converged);
  EXPECT_NEAR((tr.final_x - *pr.minimizer).norm(), 0.0, 1e-5);
  for (const auto& rec : tr.records) EXPECT_LE(std::abs(ls.g(rec.x)), 1e-8);
  // header constant matches an independent recomputation
  const double t0 = 1.0 / (pr.obj.L1 + 2.0 * pr.obj.L / ls.R);
  EXPECT_NEAR(tr.constants.at("t0"), t0, 1e-12 * t0);
}

TEST(NewtonKkt, ResidualVanishesAtEigenpair) {
  const Problem pr = lookup_problem("quad:1,2,3");
  Vector e1 = Vector::Zero(3);
  e1(0) = 1.0;
  // at (e1, lambda = -2 lambda_1): f'(x) + lambda x = 2 A e1 - 2 e1 = 0
  const KktResidual kkt = newton_kkt_residual(pr.obj, e1, -2.0);
  EXPECT_NEAR(kkt.F.norm(), 0.0, 1e-14);
  EXPECT_GT(kkt.sigma1, 0.0);
}

TEST(Gpa3, ConvergesToMinimalEigenvectorWithOneSwitch) {
  const Problem pr = lookup_problem("quad:1,2,3");
  Vector x0(3);
  x0 << 1.0, 0.15, 0.1;
  x0.normalize();
  SolverConfig cfg;
  const Trace tr = gpa3_run(pr.obj, cfg, x0);
  EXPECT_EQ(tr.termination, Termination::converged);
  EXPECT_EQ(tr.constants.at("phase_switches"), 1.0);
  EXPECT_NEAR(std::abs(tr.final_x(0)), 1.0, 1e-9);
  // multiplier converges to -2 lambda_1
  EXPECT_NEAR(tr.constants.at("lambda_final"), -2.0, 1e-8);
  bool saw_gradient = false, saw_newton = false;
  for (const auto& rec : tr.records) {
    ASSERT_TRUE(rec.phase.has_value());
    saw_gradient = saw_gradient || *rec.phase == Phase::gradient;
    saw_newton = saw_newton || *rec.phase == Phase::newton;
  }
  EXPECT_TRUE(saw_gradient);
  EXPECT_TRUE(saw_newton);
}

TEST(Gpa3, RejectsMissingHessian) {
  const Problem pr = lookup_problem("minstat:r=2");
  SolverConfig cfg;
  Vector x0(2);
  x0 << 1.0, 0.0;
  EXPECT_THROW(gpa3_run(pr.obj, cfg, x0), ConfigInvalid);
}

TEST(Ffw, LinearObjectiveSolvedInOneStep) {
  const Problem pr = lookup_problem("sphere-linear");
  SolverConfig cfg;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, pr.default_x0);
  EXPECT_EQ(tr.termination, Termination::converged);
  EXPECT_NEAR((tr.final_x - *pr.minimizer).norm(), 0.0, 1e-14);
  EXPECT_LE(tr.records.size(), 3u);
}

TEST(Ffw, LevelSetSurfaceRejected) {
  const Problem pr = lookup_problem("lpl2d:p=0.5");
  SolverConfig cfg;
  EXPECT_THROW(ffw_run(pr.surface, pr.obj, cfg, pr.default_x0), ConfigInvalid);
}

TEST(Eigmin, MatchesOracleOnDiagonal) {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  A(2, 2) = 10.0;
  SolverConfig cfg;
  Vector x0(3);
  x0 << 0.5, std::sqrt(0.375), std::sqrt(0.375);
  const EigminResult res = eigmin_run(A, x0, cfg);
  EXPECT_NEAR(res.lambda_hat, 1.0, 1e-8);
  EXPECT_NEAR(std::abs(res.v(0)), 1.0, 1e-6);
  // header constants match the closed-form rates
  EXPECT_NEAR(res.trace.constants.at("q"), 1.0 - 0.25 / 9.0, 1e-12);
  EXPECT_NEAR(res.trace.constants.at("q1"), 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(res.trace.constants.at("mu"), 1.0, 1e-12);
  EXPECT_EQ(res.trace.constants.at("shift"), 0.0);
}

TEST(Eigmin, NegativeDefiniteHandledByShift) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = -5.0;
  A(1, 1) = -1.0;
  SolverConfig cfg;
  Vector x0(2);
  x0 << 1.0, 1.0;
  const EigminResult res = eigmin_run(A, x0, cfg);
  EXPECT_NEAR(res.lambda_hat, -5.0, 1e-8);
  EXPECT_GT(res.trace.constants.at("shift"), 0.0);
}

TEST(Eigmin, RejectsAsymmetric) {
  Matrix A(2, 2);
  A << 1.0, 2.0, 0.0, 1.0;
  SolverConfig cfg;
  EXPECT_THROW(eigmin_run(A, Vector::Ones(2), cfg), NotSymmetric);
}

}  // namespace
}  // namespace gpfw
