#pragma once

#include <Eigen/Dense>
#include <optional>

#include "riccati/error.hpp"

namespace riccati {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Symmetric matrix. Every constructor symmetrizes via (X + Xᵀ)/2 and
/// rejects non-square or non-finite input.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  explicit SymMatrix(Matrix&& m);

  static SymMatrix Zero(Index n);
  static SymMatrix Identity(Index n);

  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT
  Index order() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

/// Eigenpairs of a symmetric matrix, values non-increasing, vectors
/// orthonormal and stored column-wise in matching order.
struct SpectralDecomp {
  Vector values;
  Matrix vectors;
};

/// Z = Q·diag(S)·Vᵀ with only the strictly positive singular values kept.
struct CompactSvd {
  Matrix Q;
  Vector S;
  Matrix V;
  Index rank() const noexcept { return S.size(); }
};

/// Matrix exponential by scaling and squaring around a degree-13 Padé
/// approximant. With `norm_guard`, throws kNormGuardExceeded when
/// ‖e^A‖₁ exceeds it.
Matrix expm(const Matrix& a, std::optional<double> norm_guard = std::nullopt);

/// Solves A·X = B by LU with partial pivoting. Throws kSingularMatrix when
/// the reciprocal condition estimate drops below 1e-14.
Matrix solve_linear(const Matrix& a, const Matrix& b);

SpectralDecomp sym_eig(const SymMatrix& s);

CompactSvd compact_svd(const Matrix& z);

/// Solves F·X + X·Fᵀ + G = 0 (Bartels–Stewart on the Schur form of F).
SymMatrix lyapunov_solve(const Matrix& f, const SymMatrix& g);

/// Orthonormal basis of range([B, AB, …, A^{n-1}B]) by block Arnoldi with
/// column deflation.
Matrix krylov_range(const Matrix& a, const Matrix& b);

/// Finite-horizon Gramian ∫₀ᵗ e^{sF}·Q·e^{sFᵀ} ds together with e^{tF}.
struct FiniteGramian {
  Matrix exp_tf;
  SymMatrix integral;
};
FiniteGramian finite_gramian(const Matrix& f, const SymMatrix& q, double t);

/// LU factorization reused across many solves (mass matrices, U blocks).
class LuFactor {
 public:
  LuFactor() = default;
  explicit LuFactor(const Matrix& a);

  Index size() const noexcept { return lu_.rows(); }
  double rcond() const noexcept { return rcond_; }
  /// A⁻¹·B
  Matrix solve(const Matrix& b) const;
  /// A⁻ᵀ·B
  Matrix solve_transposed(const Matrix& b) const;

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

// Small utilities shared across modules.
Matrix symmetrize(const Matrix& m);
bool all_finite(const Matrix& m);
double norm1(const Matrix& m);
double norm2(const Matrix& m);
/// Spectral norm of a symmetric matrix: max |λ|.
double norm2_sym(const Matrix& m);
double cond2(const Matrix& m);
double max_real_eigenvalue(const Matrix& m);
double min_eigenvalue_sym(const Matrix& m);
/// Orthonormal basis for the column space of a full-column-rank matrix.
Matrix orthonormal_basis(const Matrix& m);
/// ‖P₁ − P₂‖₂ for the orthogonal projectors onto range(q1), range(q2);
/// both arguments must have orthonormal columns.
double subspace_gap(const Matrix& q1, const Matrix& q2);

}  // namespace riccati
