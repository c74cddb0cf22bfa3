#pragma once

#include "riccati/linalg.hpp"
#include "riccati/problem.hpp"

namespace riccati {

/// X ≈ Z·Zᵀ together with the compact SVD Z = Q·diag(S)·Vᵀ.
struct LowRankFactor {
  Matrix Z;
  Matrix Q;
  Vector S;

  static LowRankFactor from_factor(const Matrix& z);
  Index order() const noexcept { return Z.rows(); }
  Index rank() const noexcept { return S.size(); }
  SymMatrix dense() const;
};

struct AreSolution {
  LowRankFactor factor;  // Z∞, Q∞, S∞
  SymMatrix X;           // dense stabilizing solution, pre-truncation
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  int newton_iters = 0;

  const Matrix& Zinf() const noexcept { return factor.Z; }
  const Matrix& Qinf() const noexcept { return factor.Q; }
  const Vector& Sinf() const noexcept { return factor.S; }
  /// Z∞·Z∞ᵀ
  SymMatrix Xinf() const { return factor.dense(); }
};

struct AreResidual {
  double abs = 0.0;
  double rel = 0.0;
};

/// Newton–Kleinman iteration in standardized coordinates. Stops once the
/// generalized relative residual of the truncated factor is ≤ tol_rel.
/// Throws kNoStabilizingStart, kMaxItersExceeded (value = last residual) or
/// kSizeExceeded for n > 400.
AreSolution solve_are_newton(const AreProblem& p, double tol_rel = 1e-12,
                             int max_iters = 50);

/// ‖AᵀZZᵀM + MᵀZZᵀA − MᵀZZᵀBBᵀZZᵀM + CᵀC‖₂ and its ratio to ‖CᵀC‖₂,
/// assembled from thin products of Z.
AreResidual are_residual(const AreProblem& p, const Matrix& z);

/// Residual 𝓡̄(X) = ĀᵀX + XĀ − XBBᵀX + C̄ᵀC̄ in standardized coordinates.
SymMatrix standardized_residual(const StandardForm& s, const Matrix& x);

struct RangeCheck {
  double gap = 0.0;
  Index krylov_rank = 0;
  Index are_rank = 0;
  /// Set when the two numerical ranks differ; `gap` is then the one-sided
  /// distance of the smaller space from the larger one.
  bool rank_mismatch = false;
};

/// Compares range(X∞) with the Krylov space 𝒦(Āᵀ, C̄ᵀ).
RangeCheck verify_range(const AreProblem& p, const AreSolution& sol);

/// Closed-loop matrix Ā − B·Bᵀ·X.
Matrix closed_loop(const StandardForm& s, const Matrix& x);

}  // namespace riccati
