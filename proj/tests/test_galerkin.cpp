#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "riccati/benchmarks.hpp"
#include "riccati/galerkin.hpp"
#include "support.hpp"

namespace riccati {
namespace {

struct Solved {
  ProblemInstance inst;
  AreSolution are;
  GalerkinModel model;
};

Solved solve(const ProblemInstance& inst, double tol = -1.0) {
  Solved s{inst, solve_are_newton(inst.system), {}};
  s.model = build_model(inst.system, s.are, tol);
  return s;
}

TEST(BuildModel, ScalarHasNoTruncation) {
  const Solved s = solve(gen_scalar(-1, 1, 1));
  const double x = std::sqrt(2.0) - 1.0;
  ASSERT_EQ(s.model.dim(), 1);
  EXPECT_NEAR(s.model.A_F(0, 0), -1.0 - x, 1e-12);
  EXPECT_NEAR(std::abs(s.model.B_F(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(s.model.S2(0), x, 1e-12);
}

TEST(BuildModel, ZeroOutputIsDegenerate) {
  ProblemInstance inst = gen_tridiag(6);
  inst.system.C.setZero();
  const Solved s = solve(inst);
  EXPECT_TRUE(s.model.degenerate);
  EXPECT_EQ(s.model.dim(), 0);
  const DreTrajectory r = solve_reduced(s.model, 0.5, 2.0);
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_EQ(reconstruct(s.model, r, k).matrix().norm(), 0.0);
  }
}

TEST(BuildModel, TruncationKeepsFewerColumnsThanOrder) {
  // At n = 20 every eigenvalue of X∞ sits above 1e-12·λ₁; the decay
  // reaches that level once n is large enough.
  const Solved small = solve(gen_tridiag(20), 1e-12);
  EXPECT_EQ(small.model.dim(), 20);
  const Solved big = solve(gen_tridiag(60), 1e-12);
  EXPECT_LT(big.model.dim(), 60);
  const Vector& sv = big.are.Sinf();
  const Index k = big.model.dim();
  EXPECT_LT(sv(k), 1e-12 * sv(0));
  EXPECT_GE(sv(k - 1), 1e-12 * sv(0));
}

TEST(BuildModel, InvariantsAndReproducibleOperators) {
  for (const char* name : {"tridiag", "tridiag_mass"}) {
    const ProblemInstance inst = gen_benchmark(name, 12);
    const Solved s = solve(inst, 1e-8);
    const Index k = s.model.dim();
    EXPECT_LE((s.model.Q.transpose() * s.model.Q - Matrix::Identity(k, k))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    for (Index i = 0; i < k; ++i) {
      EXPECT_GT(s.model.S2(i), 0.0);
      if (i > 0) EXPECT_LE(s.model.S2(i), s.model.S2(i - 1));
    }
    // A_F from an explicit M⁻¹ on the stored inputs.
    const Matrix a_bar = inst.system.A * inst.system.M.inverse();
    const Matrix& q = s.model.Q;
    const Matrix& z = s.model.Z;
    const Matrix af = q.transpose() *
                      (a_bar - inst.system.B * inst.system.B.transpose() * z *
                                   z.transpose()) *
                      q;
    EXPECT_LE((af - s.model.A_F).cwiseAbs().maxCoeff(), 1e-10) << name;
    EXPECT_LE(s.model.projected_residual_norm,
              s.model.full_residual_norm * (1 + 1e-12) + 1e-300);
  }
}

TEST(SolveReduced, ScalarMatchesFormulaII) {
  const Solved s = solve(gen_scalar(-1, 1, 1));
  const StandardForm sf(s.inst.system);
  const SolutionFormulaII f(sf, SymMatrix::Zero(1), s.are.X);
  const DreTrajectory r = solve_reduced(s.model, 0.5, 2.0);
  EXPECT_EQ(r.states[0](0, 0), s.model.S2(0));
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double x = f.at(r.times[k])(0, 0);
    EXPECT_NEAR(r.states[k](0, 0), s.are.X(0, 0) - x, 1e-9);
    EXPECT_NEAR(reconstruct(s.model, r, k)(0, 0), x, 1e-9);
  }
}

TEST(SolveReduced, DecaysToZeroOnLongHorizon) {
  const Solved s = solve(gen_tridiag(20));
  const DreTrajectory r = solve_reduced(s.model, 0.5, 15.0);
  double prev = r.states[0].norm();
  for (std::size_t k = 2; k < r.size(); k += 2) {
    const double cur = r.states[k].norm();
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  EXPECT_LT(prev, 1e-5 * r.states[0].norm());
}

TEST(Reconstruct, InitialValueIsZero) {
  const Solved s = solve(gen_tridiag(10));
  const DreTrajectory r = solve_reduced(s.model, 0.25, 1.0);
  EXPECT_LE(reconstruct(s.model, r, 0).matrix().norm(), 1e-15);
}

TEST(Reconstruct, StaysBelowStationaryAndSemidefinite) {
  const Solved s = solve(gen_tridiag(12));
  const DreTrajectory r = solve_reduced(s.model, 0.25, 5.0);
  const double l1 = s.model.S2(0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    Matrix gap = -r.states[k];
    gap.diagonal() += s.model.S2;
    EXPECT_GE(min_eigenvalue_sym(gap), -1e-8 * l1);
    EXPECT_GE(min_eigenvalue_sym(reconstruct(s.model, r, k).matrix()),
              -1e-8 * l1);
  }
}

TEST(ExpInvariance, Examples) {
  const Solved scalar = solve(gen_scalar(-1, 1, 1));
  EXPECT_LE(exp_invariance_gap(scalar.inst.system, scalar.are), 1e-14);
  const Solved t = solve(gen_tridiag(20));
  EXPECT_LE(exp_invariance_gap(t.inst.system, t.are), 1e-6);
  const Solved r1 = solve(gen_diagonal_rank1(6));
  EXPECT_LE(exp_invariance_gap(r1.inst.system, r1.are), 1e-10);
}

std::vector<SymMatrix> formula_snapshots(const Solved& s,
                                         const std::vector<double>& ts) {
  const StandardForm sf(s.inst.system);
  const SolutionFormulaII f(sf, s.inst.X0, s.are.X);
  std::vector<SymMatrix> out;
  for (double t : ts) out.push_back(f.at(t));
  return out;
}

TEST(EntryDecay, Examples) {
  const Solved s = solve(gen_tridiag(20));
  const DecayReport zero = entry_decay_check({SymMatrix::Zero(20)}, s.are);
  EXPECT_EQ(zero.violations, 0);
  EXPECT_EQ(zero.max_ratio, 0.0);

  const auto snaps = formula_snapshots(s, {1, 3, 5});
  const DecayReport rep = entry_decay_check(snaps, s.are);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_EQ(rep.checked, 3 * 400);
  // Diagonal specialization.
  const SpectralDecomp eig = sym_eig(s.are.X);
  for (const SymMatrix& x : snaps) {
    for (Index i = 0; i < 20; ++i) {
      const double qxq = eig.vectors.col(i).dot(x.matrix() * eig.vectors.col(i));
      EXPECT_LE(qxq, eig.values(i) + 1e-10 * eig.values(0));
    }
  }
}

TEST(EntryDecay, DetectsInflatedSnapshot) {
  const Solved s = solve(gen_tridiag(8));
  const DecayReport rep =
      entry_decay_check({SymMatrix(2.0 * s.are.X.matrix())}, s.are);
  EXPECT_GT(rep.violations, 0);
  EXPECT_GT(rep.max_excess, 0.0);
}

double brute_force_bound(const Vector& lam, Index k) {
  double sum = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    for (Index j = 0; j < lam.size(); ++j) {
      if (i >= k || j >= k) sum += std::max(lam(i), 0.0) * std::max(lam(j), 0.0);
    }
  }
  return std::sqrt(sum);
}

TEST(ProjectionBound, ClosedFormMatchesDoubleSum) {
  const Solved s = solve(gen_tridiag(20));
  const Vector lam = sym_eig(s.are.X).values;
  for (Index k : {0, 1, 2, 5, 10, 19, 20}) {
    const double want = brute_force_bound(lam, k);
    EXPECT_NEAR(projection_error_bound(s.are, k), want, 1e-12 * lam.sum())
        << k;
  }
  EXPECT_NEAR(projection_error_bound(s.are, 0), lam.sum(), 1e-12 * lam.sum());
  EXPECT_LE(projection_error_bound(s.are, 20), 1e-6 * lam.sum());
}

TEST(ProjectionBound, RankDeficientIsZeroAtRank) {
  const Solved s = solve(gen_diagonal_rank1(6));
  EXPECT_LE(projection_error_bound(s.are, 1), 1e-12 * s.are.X.matrix().norm());
}

TEST(ProjectionBound, MeasuredErrorBelowBound) {
  const Solved s = solve(gen_tridiag(20));
  const auto snaps = formula_snapshots(s, {0.5, 1, 2, 4, 8, 15});
  const double l1 = sym_eig(s.are.X).values(0);
  for (Index k : {10}) {
    const Matrix qk = leading_eigenvectors(s.are, k);
    const double bound = projection_error_bound(s.are, k);
    for (const SymMatrix& x : snaps) {
      EXPECT_LE(projection_error(x.matrix(), qk), bound + 1e-8 * l1);
    }
  }
}

TEST(GalerkinProperties, BestApproximationOrthogonality) {
  const Solved s = solve(gen_tridiag(10));
  const Matrix& q = s.model.Q;
  const auto snaps = formula_snapshots(s, {0.5, 2.0});
  for (const SymMatrix& x : snaps) {
    const Matrix px = q * (q.transpose() * x.matrix() * q) * q.transpose();
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix y = testing::random_symmetric(q.cols());
      const Matrix qyq = q * y * q.transpose();
      const double inner = ((x.matrix() - px).cwiseProduct(qyq)).sum();
      EXPECT_LE(std::abs(inner), 1e-8 * x.matrix().norm() * y.norm());
    }
  }
}

TEST(GalerkinProperties, EigenvalueCountsNonDecreasing) {
  const Solved s = solve(gen_tridiag(20));
  std::vector<double> ts;
  for (int i = 1; i <= 30; ++i) ts.push_back(0.5 * i);
  const auto snaps = formula_snapshots(s, ts);
  for (double eps : {1e-4, 1e-8}) {
    long prev = 0;
    for (const SymMatrix& x : snaps) {
      const Vector lam = sym_eig(x).values;
      const long count = (lam.array() >= eps).count();
      EXPECT_GE(count, prev) << eps;
      prev = count;
    }
  }
}

}  // namespace
}  // namespace riccati
