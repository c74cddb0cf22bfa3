#include "riccati/problem.hpp"

namespace riccati {

bool AreProblem::identity_mass() const {
  return M.size() == 0 || M.isIdentity(0.0);
}

void AreProblem::validate() const {
  const Index n = A.rows();
  if (A.cols() != n) throw Error(ErrorCode::kNonSquare, "A must be square");
  if (B.rows() != n) throw Error(ErrorCode::kDimensionMismatch, "B rows != n");
  if (C.cols() != n) throw Error(ErrorCode::kDimensionMismatch, "C cols != n");
  if (M.size() != 0 && (M.rows() != n || M.cols() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "M must be n x n");
  }
  if (!all_finite(A) || !all_finite(B) || !all_finite(C) || !all_finite(M)) {
    throw Error(ErrorCode::kNonFinite, "problem matrices");
  }
}

StandardForm::StandardForm(const AreProblem& p) {
  p.validate();
  const Index n = p.order();
  identity_ = p.identity_mass();
  b_ = p.B;
  m_ = p.M.size() == 0 ? Matrix::Identity(n, n) : p.M;
  if (identity_) {
    a_ = p.A;
    c_ = p.C;
  } else {
    mass_lu_ = LuFactor(m_);
    // X·M⁻¹ = (M⁻ᵀ·Xᵀ)ᵀ
    a_ = mass_lu_.solve_transposed(p.A.transpose()).transpose();
    c_ = mass_lu_.solve_transposed(p.C.transpose()).transpose();
  }
  bbt_ = SymMatrix(b_ * b_.transpose());
  ctc_ = SymMatrix(c_.transpose() * c_);
}

Matrix StandardForm::apply_mass_inverse(const Matrix& y) const {
  if (identity_) return y;
  return mass_lu_.solve(y);
}

}  // namespace riccati
