#pragma once

#include <string>

#include "riccati/linalg.hpp"

namespace riccati {

/// Coefficients of the generalized Riccati equations
///   Mᵀ·Ẋ·M = Aᵀ·X·M + Mᵀ·X·A − Mᵀ·X·B·Bᵀ·X·M + Cᵀ·C
/// and of the matching algebraic equation (Ẋ = 0). M = I gives the
/// standard form.
struct AreProblem {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix M;

  Index order() const noexcept { return A.rows(); }
  bool identity_mass() const;
  /// Throws kDimensionMismatch / kNonSquare / kNonFinite.
  void validate() const;
};

/// A DRE instance: system matrices, initial value and default horizon [0, T].
struct ProblemInstance {
  std::string name;
  AreProblem system;
  SymMatrix X0;
  double horizon = 1.0;
};

/// The problem pulled back to M = I:  Ā = A·M⁻¹, C̄ = C·M⁻¹, B unchanged.
/// The unknown X is the same in both coordinate systems. M is LU-factored
/// once and never inverted explicitly.
class StandardForm {
 public:
  explicit StandardForm(const AreProblem& p);

  Index order() const noexcept { return a_.rows(); }
  const Matrix& A() const noexcept { return a_; }
  const Matrix& B() const noexcept { return b_; }
  const Matrix& C() const noexcept { return c_; }
  const Matrix& mass() const noexcept { return m_; }
  bool identity_mass() const noexcept { return identity_; }

  /// B·Bᵀ
  const SymMatrix& BBt() const noexcept { return bbt_; }
  /// C̄ᵀ·C̄
  const SymMatrix& CtC() const noexcept { return ctc_; }

  /// M⁻¹·Y via the stored factorization (Y itself when M = I).
  Matrix apply_mass_inverse(const Matrix& y) const;

 private:
  Matrix a_, b_, c_, m_;
  bool identity_ = true;
  LuFactor mass_lu_;
  SymMatrix bbt_, ctc_;
};

}  // namespace riccati
