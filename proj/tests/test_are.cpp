#include <gtest/gtest.h>

#include <cmath>

#include "riccati/are.hpp"
#include "riccati/benchmarks.hpp"
#include "support.hpp"

namespace riccati {
namespace {

AreProblem scalar(double a, double b, double c) {
  return gen_scalar(a, b, c).system;
}

TEST(AreNewton, ScalarZeroDrift) {
  const AreSolution s = solve_are_newton(scalar(0, 1, 1));
  EXPECT_NEAR(s.X(0, 0), 1.0, 1e-12);
  EXPECT_LE(s.rel_residual, 1e-12);
}

TEST(AreNewton, ScalarStableDrift) {
  const AreSolution s = solve_are_newton(scalar(-1, 1, 1));
  // −x² − 2x + 1 = 0, stabilizing root
  EXPECT_NEAR(s.X(0, 0), std::sqrt(2.0) - 1.0, 1e-12);
  EXPECT_NEAR(s.Xinf()(0, 0), std::sqrt(2.0) - 1.0, 1e-12);
}

TEST(AreNewton, ScalarUnstableDriftNeedsStart) {
  // a = 1: x² − 2x − 1 = 0 → x = 1 + √2
  const AreSolution s = solve_are_newton(scalar(1, 1, 1));
  EXPECT_NEAR(s.X(0, 0), 1.0 + std::sqrt(2.0), 1e-11);
}

TEST(AreNewton, ZeroInputReducesToLyapunov) {
  const Index n = 6;
  AreProblem p;
  p.A = testing::random_stable(n);
  p.B = Matrix::Zero(n, 1);
  p.C = testing::random_matrix(2, n);
  p.M = Matrix::Identity(n, n);
  const AreSolution s = solve_are_newton(p);
  const Matrix ref = testing::kron_lyapunov(p.A.transpose(),
                                            p.C.transpose() * p.C);
  EXPECT_LE((s.X.matrix() - ref).norm(), 1e-10 * ref.norm());
}

TEST(AreNewton, UncontrollableUnstableFails) {
  AreProblem p = scalar(1, 0, 1);
  try {
    solve_are_newton(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoStabilizingStart);
  }
}

TEST(AreNewton, MaxItersReportsResidual) {
  try {
    solve_are_newton(gen_tridiag(10).system, 1e-14, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMaxItersExceeded);
    ASSERT_TRUE(e.value().has_value());
    EXPECT_GT(*e.value(), 1e-14);
  }
}

TEST(AreNewton, SizeLimit) {
  AreProblem p;
  p.A = -Matrix::Identity(401, 401);
  p.B = Matrix::Ones(401, 1);
  p.C = Matrix::Ones(1, 401);
  try {
    solve_are_newton(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeExceeded);
  }
}

TEST(AreResidualOp, Examples) {
  const AreProblem p = scalar(-1, 1, 1);
  const Matrix z = Matrix::Constant(1, 1, std::sqrt(std::sqrt(2.0) - 1.0));
  EXPECT_LE(are_residual(p, z).abs, 1e-12);
  const AreResidual r0 = are_residual(p, Matrix::Zero(1, 1));
  EXPECT_DOUBLE_EQ(r0.rel, 1.0);
  const AreProblem t = gen_tridiag(20).system;
  const AreSolution s = solve_are_newton(t, 1e-10);
  EXPECT_LE(are_residual(t, s.Zinf()).rel, 1e-10);
}

TEST(AreResidualOp, FactoredMatchesDense) {
  const ProblemInstance inst = gen_tridiag_mass(8);
  const AreProblem& p = inst.system;
  const Matrix z = testing::random_matrix(8, 3);
  const Matrix x = z * z.transpose();
  const Matrix r = p.A.transpose() * x * p.M + p.M.transpose() * x * p.A -
                   p.M.transpose() * x * p.B * p.B.transpose() * x * p.M +
                   p.C.transpose() * p.C;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r + r.transpose()));
  const double want = es.eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(are_residual(p, z).abs, want, 1e-12 * want);
}

class AreInvariants : public ::testing::TestWithParam<const char*> {};

TEST_P(AreInvariants, StabilizingSemidefiniteInvariant) {
  const std::string name = GetParam();
  const Index size = name == "conv_diff" ? 6 : 16;
  const ProblemInstance inst = gen_benchmark(name, size);
  const AreSolution s = solve_are_newton(inst.system);
  const StandardForm sf(inst.system);
  EXPECT_LE(s.rel_residual, 1e-12);
  EXPECT_LT(max_real_eigenvalue(closed_loop(sf, s.X)), 0.0);
  const Vector lam = sym_eig(s.X).values;
  EXPECT_GE(lam(lam.size() - 1), -1e-10 * lam(0));
  // Closed-loop invariance of range(X∞). The unweighted form only holds
  // when the numerical range is the exact one; the S²-weighted leak
  // ‖(I − QQᵀ)ÂᵀX_N‖ is small in every case.
  const Matrix& q = s.Qinf();
  const Matrix at = closed_loop(sf, s.X).transpose();
  const Matrix xn = s.Xinf().matrix();
  const Matrix weighted = at * xn - q * (q.transpose() * at * xn);
  EXPECT_LE(weighted.norm(), 1e-8 * at.norm() * xn.norm());
  if (name != "conv_diff") {
    const Matrix leak = at * q - q * (q.transpose() * at * q);
    EXPECT_LE(leak.norm(), 1e-8 * sf.A().norm());
  }
}

INSTANTIATE_TEST_SUITE_P(Benchmarks, AreInvariants,
                         ::testing::Values("tridiag", "tridiag_mass",
                                           "conv_diff", "diag_rank1"));

TEST(AreMass, StandardizedEquationSharesSolution) {
  const ProblemInstance inst = gen_tridiag_mass(10);
  const AreSolution s = solve_are_newton(inst.system);
  const StandardForm sf(inst.system);
  EXPECT_LE(standardized_residual(sf, s.X).matrix().norm(),
            1e-10 * sf.CtC().matrix().norm());
}

TEST(VerifyRange, DiagonalSingleOutput) {
  AreProblem p;
  p.A = Matrix::Zero(2, 2);
  p.A.diagonal() << -1, -2;
  p.B = Matrix::Zero(2, 1);
  p.C = Matrix::Identity(1, 2);
  const AreSolution s = solve_are_newton(p);
  const RangeCheck r = verify_range(p, s);
  EXPECT_FALSE(r.rank_mismatch);
  EXPECT_EQ(r.krylov_rank, 1);
  EXPECT_LE(r.gap, 1e-10);
}

TEST(VerifyRange, ZeroOutputIsEmpty) {
  AreProblem p = gen_tridiag(5).system;
  p.C = Matrix::Zero(1, 5);
  const AreSolution s = solve_are_newton(p);
  const RangeCheck r = verify_range(p, s);
  EXPECT_EQ(r.krylov_rank, 0);
  EXPECT_EQ(r.are_rank, 0);
  EXPECT_EQ(r.gap, 0.0);
}

TEST(VerifyRange, TridiagFullRank) {
  const AreProblem p = gen_tridiag(20).system;
  const RangeCheck r = verify_range(p, solve_are_newton(p));
  EXPECT_EQ(r.krylov_rank, 20);
  EXPECT_EQ(r.are_rank, 20);
  EXPECT_LE(r.gap, 1e-6);
}

TEST(VerifyRange, RankDeficientDiagonal) {
  const AreProblem p = gen_diagonal_rank1(8).system;
  const AreSolution s = solve_are_newton(p);
  const RangeCheck r = verify_range(p, s);
  EXPECT_EQ(r.are_rank, 1);
  EXPECT_EQ(r.krylov_rank, 1);
  EXPECT_LE(r.gap, 1e-6);
}

}  // namespace
}  // namespace riccati
