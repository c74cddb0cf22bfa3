#pragma once

#include <vector>

#include "riccati/are.hpp"
#include "riccati/dre.hpp"
#include "riccati/problem.hpp"

namespace riccati {

/// Reduced model for X(t) = Z·Zᵀ − Q·X̃(t)·Qᵀ with X0 = 0. The reduced
/// unknown obeys X̃' = A_Fᵀ·X̃ + X̃·A_F + X̃·B_F·B_Fᵀ·X̃, X̃(0) = diag(S2).
struct GalerkinModel {
  Matrix Q;   // n×k, orthonormal
  Vector S2;  // k retained squared singular values, non-increasing
  Matrix Z;   // Q·diag(S) = truncated Z∞
  Matrix A_F; // Qᵀ(Ā − BBᵀZZᵀ)Q
  Matrix B_F; // QᵀB
  double truncation_tol = 0.0;
  /// Set when range(X∞) is empty (C = 0); the solution is then X ≡ 0.
  bool degenerate = false;
  /// ‖Qᵀ𝓡(ZZᵀ)Q‖₂ and ‖𝓡(ZZᵀ)‖₂ in standardized coordinates.
  double projected_residual_norm = 0.0;
  double full_residual_norm = 0.0;

  Index order() const noexcept { return Q.rows(); }
  Index dim() const noexcept { return Q.cols(); }
};

/// Truncates Z∞ at `truncation_tol`·S₁ (default ε_mach) and projects.
GalerkinModel build_model(const AreProblem& p, const AreSolution& are,
                          double truncation_tol = -1.0);

/// Reduced trajectory X̃(kh) by modified Davison–Maki with symmetrization.
/// A degenerate model yields a trajectory of 0×0 states.
DreTrajectory solve_reduced(const GalerkinModel& m, double h, double tf,
                            double tol_exp = 1e10,
                            const StepOptions& opts = {});

NdreCoefficients reduced_coefficients(const GalerkinModel& m);

/// Z·Zᵀ − Q·X̃(kh)·Qᵀ
SymMatrix reconstruct(const GalerkinModel& m, const DreTrajectory& r,
                      std::size_t k);

/// max over t ∈ {0.1, 1, 10}/‖Â‖₂ of
/// ‖e^{tÂᵀ}ZZᵀ − Q·e^{t·QᵀÂᵀQ}·diag(S²)·Qᵀ‖_F / ‖ZZᵀ‖_F.
double exp_invariance_gap(const AreProblem& p, const AreSolution& are);

struct DecayReport {
  long checked = 0;
  long violations = 0;
  /// max over snapshots and (i, j) of |q_iᵀXq_j| − √(λ_iλ_j); negative when
  /// every entry is strictly inside the bound.
  double max_excess = 0.0;
  /// Largest fraction of the bound consumed, |q_iᵀXq_j| / √(λ_iλ_j).
  double max_ratio = 0.0;
};

/// Checks |q_iᵀX(t)q_j| ≤ √(λ_iλ_j) + 1e-10·λ₁ over the eigenpairs of X∞.
DecayReport entry_decay_check(const std::vector<SymMatrix>& snapshots,
                              const AreSolution& are);

/// √(Σ_{i>k ∨ j>k} λ_iλ_j) over the eigenvalues of X∞.
double projection_error_bound(const AreSolution& are, Index k);

/// ‖X − Qₖ·Qₖᵀ·X·Qₖ·Qₖᵀ‖_F
double projection_error(const Matrix& x, const Matrix& qk);

/// Leading k eigenvectors of X∞.
Matrix leading_eigenvectors(const AreSolution& are, Index k);

}  // namespace riccati
