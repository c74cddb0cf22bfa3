#pragma once

#include <string>
#include <vector>

#include "riccati/are.hpp"
#include "riccati/linalg.hpp"
#include "riccati/problem.hpp"

namespace riccati {

/// Non-symmetric Riccati equation
///   Ẇ = M22·W − W·M11 − W·M12·W + M21,  W(0) = M0,
/// with W of size m×n. Its linear companion is [U;V]' = M·[U;V] with
/// M = [[M11, M12], [M21, M22]] and W = V·U⁻¹.
struct NdreCoefficients {
  Matrix M11;  // n×n
  Matrix M12;  // n×m
  Matrix M21;  // m×n
  Matrix M22;  // m×m
  Matrix M0;   // m×n

  Index n() const noexcept { return M11.rows(); }
  Index m() const noexcept { return M22.rows(); }
  void validate() const;
  /// The (n+m)×(n+m) block matrix.
  Matrix block() const;
  /// Right-hand side of the NDRE at W.
  Matrix rhs(const Matrix& w) const;
};

/// H = [[A, −BBᵀ], [−CᵀC, −Aᵀ]].
struct HamiltonianEmbedding {
  Matrix H;

  static HamiltonianEmbedding from(const Matrix& a, const Matrix& b,
                                   const Matrix& c);
  /// max |((JH)ᵀ − JH)_ij| with J = [[0, I], [−I, 0]].
  double structure_defect() const;
};

/// Per-step companion quantities: cond₂(U), ‖U‖₂, ‖V‖₂.
struct StepDiagnostics {
  double cond_u = 1.0;
  double norm_u = 1.0;
  double norm_v = 0.0;
};

struct DreTrajectory {
  std::string solver;
  double h = 0.0;
  double tol_exp = 0.0;
  bool symmetric = false;
  std::vector<double> times;   // times[k] = k·h
  std::vector<Matrix> states;  // W(k·h) or X(k·h)
  /// One entry per stored state when diagnostics were requested; entry 0
  /// describes the initial pair [I; M0].
  std::vector<StepDiagnostics> diagnostics;

  std::size_t size() const noexcept { return states.size(); }
  SymMatrix sym_state(std::size_t k) const { return SymMatrix(states.at(k)); }
};

struct StepOptions {
  bool diagnostics = false;
  /// Abort with kSingularU when the estimated condition of U exceeds this.
  double cond_abort = 1e12;
};

/// Number of steps k ≥ 1 with k·h ≤ tf (endpoint included when h divides
/// tf up to a relative 1e-12).
long step_count(double h, double tf);

enum class DmVariant { kExpUpdate, kUvUpdate };

/// Classical Davison–Maki: powers of e^{hM} applied to [I; M0]
/// (kExpUpdate) or e^{hM} applied to the previous [U; V] (kUvUpdate).
DreTrajectory davison_maki(const NdreCoefficients& c, double h, double tf,
                           DmVariant variant, const StepOptions& opts = {});

/// Modified Davison–Maki: each step re-anchors at [I; W_{k−1}], so the
/// iterates stay bounded. Refuses to start when ‖e^{hM}‖₁ > tol_exp.
DreTrajectory modified_davison_maki(const NdreCoefficients& c, double h,
                                    double tf, double tol_exp = 1e10,
                                    bool symmetrize = false,
                                    const StepOptions& opts = {});

/// M11 = −Ā, M12 = BBᵀ, M21 = C̄ᵀC̄, M22 = Āᵀ, M0 = X0.
NdreCoefficients embed_dre(const Matrix& a, const Matrix& b, const Matrix& c,
                           const SymMatrix& x0);
NdreCoefficients embed_dre(const StandardForm& s, const SymMatrix& x0);

/// X(t) from an arbitrary ARE solution X*:
///   X* − e^{tÂᵀ}·X̃·(I − G(t)·X̃)⁻¹·e^{tÂ},  Â = Ā − BBᵀX*, X̃ = X* − X0,
/// G(t) the finite-horizon Gramian of (Â, B).
class SolutionFormulaI {
 public:
  SolutionFormulaI(const StandardForm& s, const SymMatrix& x0,
                   const SymMatrix& x_star);
  SymMatrix at(double t) const;

 private:
  Matrix a_hat_;
  SymMatrix bbt_, x_star_, x_tilde_;
};

/// X(t) from the stabilizing solution and the closed-loop Lyapunov
/// solution X_L (Â·X_L + X_L·Âᵀ + BBᵀ = 0).
class SolutionFormulaII {
 public:
  SolutionFormulaII(const StandardForm& s, const SymMatrix& x0,
                    const SymMatrix& x_inf);
  SymMatrix at(double t) const;
  const SymMatrix& lyapunov_solution() const noexcept { return x_l_; }
  const Matrix& closed_loop() const noexcept { return a_hat_; }

 private:
  Matrix a_hat_;
  SymMatrix x_inf_, x_tilde_, x_l_;
};

SymMatrix solution_formula_I(const Matrix& a, const Matrix& b, const Matrix& c,
                             const SymMatrix& x0, const SymMatrix& x_star,
                             double t);
SymMatrix solution_formula_II(const Matrix& a, const Matrix& b,
                              const Matrix& c, const SymMatrix& x0,
                              const AreSolution& are, double t);

/// Classical RK4 directly on the NDRE; cross-check only.
DreTrajectory rk_oracle(const NdreCoefficients& c, double h, double tf);

enum class SplittingScheme { kLie, kStrang };

/// Lie / Strang splitting of the DRE into the affine part
/// Ẋ = ĀᵀX + XĀ + C̄ᵀC̄ and the quadratic part Ẋ = −XBBᵀX. Both subflows
/// are exact; exponentials and Gramians are precomputed for the step size.
class SplittingIntegrator {
 public:
  SplittingIntegrator(const StandardForm& s, double h, SplittingScheme scheme);

  SymMatrix step(const SymMatrix& x) const;
  SymMatrix affine_flow(const SymMatrix& x, bool half) const;
  /// (I + τ·X·BBᵀ)⁻¹·X, the exact flow of Ẋ = −XBBᵀX over time τ.
  SymMatrix nonlinear_flow(const SymMatrix& x, double tau) const;

 private:
  double h_;
  SplittingScheme scheme_;
  SymMatrix bbt_;
  Matrix exp_full_, exp_half_;  // e^{hĀᵀ}, e^{hĀᵀ/2}
  SymMatrix gram_full_, gram_half_;
};

SymMatrix splitting_step(const Matrix& a, const Matrix& b, const Matrix& c,
                         const SymMatrix& x, double h, SplittingScheme scheme);
DreTrajectory splitting_solve(const StandardForm& s, const SymMatrix& x0,
                              double h, double tf, SplittingScheme scheme);

struct RangeGapSample {
  long step = 0;
  double gap = 0.0;
  double cond_u_dm = 1.0;
};

/// Principal-angle gap between range([U_dm; V_dm]) and
/// range([U_mod; V_mod]) after each of the first k steps.
std::vector<RangeGapSample> range_equivalence_series(
    const NdreCoefficients& c, double h, long k);
/// Gap after step k.
double range_equivalence_check(const NdreCoefficients& c, double h, long k);

}  // namespace riccati
