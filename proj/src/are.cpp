#include "riccati/are.hpp"

#include <cmath>
#include <limits>

namespace riccati {

namespace {

constexpr Index kMaxAreOrder = 400;

// Z = Q·diag(√λ) over the eigenvalues λ ≥ ε·λ_max.
Matrix factor_from_dense(const SymMatrix& x) {
  const Index n = x.order();
  const SpectralDecomp eig = sym_eig(x);
  if (n == 0 || eig.values(0) <= 0.0) return Matrix(n, 0);
  const double cut = std::numeric_limits<double>::epsilon() * eig.values(0);
  Index rank = 0;
  while (rank < n && eig.values(rank) >= cut) ++rank;
  return eig.vectors.leftCols(rank) *
         eig.values.head(rank).cwiseSqrt().asDiagonal();
}

// Initial feedback by a shifted Lyapunov equation: with β large enough that
// −(Ā + βI) is stable, P solving −(Ā+βI)P − P(Ā+βI)ᵀ + 2BBᵀ = 0 gives the
// stabilizing start X₀ = P⁻¹ (requires (Ā, B) controllable).
Matrix stabilizing_start(const StandardForm& s) {
  const Index n = s.order();
  const Matrix& a = s.A();
  Eigen::EigenSolver<Matrix> es(a, false);
  const double max_abs_re = es.eigenvalues().real().cwiseAbs().maxCoeff();
  double beta = 1.1 * std::max(max_abs_re, 0.1 * norm1(a));
  if (beta == 0.0) beta = 1.0;
  const Matrix f = -(a + beta * Matrix::Identity(n, n));
  Matrix p;
  try {
    p = lyapunov_solve(f, SymMatrix(2.0 * s.BBt().matrix()));
    const Matrix x0 = symmetrize(solve_linear(p, Matrix::Identity(n, n)));
    if (max_real_eigenvalue(closed_loop(s, x0)) >= 0.0) {
      throw Error(ErrorCode::kNoStabilizingStart,
                  "initial feedback does not stabilize");
    }
    return x0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoStabilizingStart) throw;
    throw Error(ErrorCode::kNoStabilizingStart,
                std::string("initial stabilization failed (") + e.what() +
                    "); (A M^-1, B) may not be stabilizable");
  }
}

}  // namespace

LowRankFactor LowRankFactor::from_factor(const Matrix& z) {
  LowRankFactor f;
  f.Z = z;
  const CompactSvd svd = compact_svd(z);
  f.Q = svd.Q;
  f.S = svd.S;
  return f;
}

SymMatrix LowRankFactor::dense() const {
  if (rank() == 0) return SymMatrix::Zero(order());
  return SymMatrix(Q * S.array().square().matrix().asDiagonal() *
                   Q.transpose());
}

Matrix closed_loop(const StandardForm& s, const Matrix& x) {
  return s.A() - s.B() * (s.B().transpose() * x);
}

SymMatrix standardized_residual(const StandardForm& s, const Matrix& x) {
  const Matrix xb = x * s.B();
  Matrix r = s.A().transpose() * x + x * s.A() - xb * xb.transpose();
  r += s.CtC().matrix();
  return SymMatrix(std::move(r));
}

AreResidual are_residual(const AreProblem& p, const Matrix& z) {
  p.validate();
  const Index n = p.order();
  if (z.rows() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "are_residual factor rows");
  }
  const Matrix m = p.M.size() == 0 ? Matrix::Identity(n, n) : p.M;
  const Matrix ctc = p.C.transpose() * p.C;
  const double ctc_norm = norm2_sym(ctc);
  // With P = ZᵀM, G = ZᵀA, K = ZᵀB:  R = GᵀP + PᵀG − Pᵀ·K·Kᵀ·P + CᵀC.
  const Matrix pz = z.transpose() * m;
  const Matrix gz = z.transpose() * p.A;
  const Matrix kz = z.transpose() * p.B;
  const Matrix kp = kz.transpose() * pz;
  Matrix r = gz.transpose() * pz;
  r += r.transpose().eval();
  r -= kp.transpose() * kp;
  r += ctc;
  AreResidual out;
  out.abs = norm2_sym(symmetrize(r));
  if (ctc_norm > 0.0) {
    out.rel = out.abs / ctc_norm;
  } else {
    out.rel = out.abs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

AreSolution solve_are_newton(const AreProblem& p, double tol_rel,
                             int max_iters) {
  if (p.order() > kMaxAreOrder) {
    throw Error(ErrorCode::kSizeExceeded, "solve_are_newton supports n <= 400",
                std::nullopt, static_cast<double>(p.order()));
  }
  const StandardForm s(p);
  const Index n = s.order();

  Matrix x = Matrix::Zero(n, n);
  if (max_real_eigenvalue(s.A()) >= 0.0) x = stabilizing_start(s);

  AreSolution sol;
  AreResidual res{HUGE_VAL, HUGE_VAL};
  for (int it = 1; it <= max_iters; ++it) {
    const Matrix xb = x * s.B();
    const Matrix f = closed_loop(s, x).transpose();
    const SymMatrix g(s.CtC().matrix() + xb * xb.transpose());
    x = lyapunov_solve(f, g).matrix();

    const Matrix z = factor_from_dense(SymMatrix(x));
    res = are_residual(p, z);
    if (!std::isfinite(res.abs)) {
      throw Error(ErrorCode::kNonFinite, "Newton iterate diverged",
                  std::nullopt, res.rel);
    }
    if (res.rel <= tol_rel) {
      sol.X = SymMatrix(x);
      sol.factor = LowRankFactor::from_factor(z);
      sol.abs_residual = res.abs;
      sol.rel_residual = res.rel;
      sol.newton_iters = it;
      if (max_real_eigenvalue(closed_loop(s, x)) >= 0.0) {
        throw Error(ErrorCode::kConvergenceFailure,
                    "converged ARE solution is not stabilizing");
      }
      return sol;
    }
  }
  throw Error(ErrorCode::kMaxItersExceeded,
              "Newton-Kleinman did not reach the residual tolerance",
              std::nullopt, res.rel);
}

RangeCheck verify_range(const AreProblem& p, const AreSolution& sol) {
  const StandardForm s(p);
  const Matrix qk = krylov_range(s.A().transpose(), s.C().transpose());
  const Matrix& qx = sol.factor.Q;
  RangeCheck out;
  out.krylov_rank = qk.cols();
  out.are_rank = qx.cols();
  if (out.krylov_rank == out.are_rank) {
    out.gap = subspace_gap(qk, qx);
    return out;
  }
  out.rank_mismatch = true;
  const bool krylov_smaller = out.krylov_rank < out.are_rank;
  const Matrix& small = krylov_smaller ? qk : qx;
  const Matrix& large = krylov_smaller ? qx : qk;
  const Matrix resid = small - large * (large.transpose() * small);
  out.gap = norm2(resid);
  return out;
}

}  // namespace riccati
