#include <Eigen/Eigenvalues>
#include <complex>

#include "riccati/linalg.hpp"

namespace riccati {

namespace {

constexpr Index kMaxLyapunovOrder = 400;

}  // namespace

SymMatrix lyapunov_solve(const Matrix& f, const SymMatrix& g) {
  const Index n = f.rows();
  if (f.cols() != n) throw Error(ErrorCode::kNonSquare, "lyapunov_solve F");
  if (g.order() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "lyapunov_solve G order");
  }
  if (n > kMaxLyapunovOrder) {
    throw Error(ErrorCode::kSizeExceeded, "lyapunov_solve supports n <= 400",
                std::nullopt, static_cast<double>(n));
  }
  if (!all_finite(f)) throw Error(ErrorCode::kNonFinite, "lyapunov_solve F");
  if (n == 0) return SymMatrix::Zero(0);

  using Complex = std::complex<double>;
  using CMatrix = Eigen::MatrixXcd;
  using CVector = Eigen::VectorXcd;

  // F = U·T·Uᴴ with T upper triangular. With Y = Uᴴ·X·U the equation turns
  // into T·Y + Y·Tᴴ = −Uᴴ·G·U, solved column by column from the right.
  Eigen::ComplexSchur<Matrix> schur(f);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure, "Schur decomposition of F");
  }
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();

  const double scale = std::max(norm1(f), 1e-300);
  double min_sep = HUGE_VAL;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      min_sep = std::min(min_sep, std::abs(t(i, i) + std::conj(t(j, j))));
    }
  }
  if (min_sep <= 1e-13 * scale) {
    throw Error(ErrorCode::kSpectrumOverlap,
                "F and -F share an eigenvalue; the solution is not unique",
                std::nullopt, min_sep);
  }

  const CMatrix rhs = -(u.adjoint() * g.matrix().cast<Complex>() * u);
  CMatrix y = CMatrix::Zero(n, n);
  for (Index j = n - 1; j >= 0; --j) {
    CVector r = rhs.col(j);
    const Index tail = n - 1 - j;
    if (tail > 0) {
      r.noalias() -= y.rightCols(tail) *
                     t.row(j).tail(tail).conjugate().transpose();
    }
    // Back substitution with (T + conj(t_jj)·I).
    const Complex shift = std::conj(t(j, j));
    for (Index i = n - 1; i >= 0; --i) {
      Complex acc = r(i);
      const Index len = n - 1 - i;
      if (len > 0) {
        acc -= t.row(i).tail(len).transpose().cwiseProduct(r.tail(len)).sum();
      }
      r(i) = acc / (t(i, i) + shift);
    }
    y.col(j) = r;
  }
  const Matrix x = (u * y * u.adjoint()).real();
  return SymMatrix(x);
}

}  // namespace riccati
