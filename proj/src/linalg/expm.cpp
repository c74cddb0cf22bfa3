#include <array>
#include <cmath>

#include "riccati/linalg.hpp"

namespace riccati {

namespace {

// Degree-13 Padé coefficients b_0 … b_13 and the 1-norm bound below which the
// unscaled approximant reaches unit roundoff in backward error.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Matrix& a, std::optional<double> norm_guard) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kNonSquare, "expm needs a square matrix");
  }
  if (!all_finite(a)) throw Error(ErrorCode::kNonFinite, "expm input");
  const Index n = a.rows();
  if (n == 0) return Matrix(0, 0);

  const double anorm = norm1(a);
  int s = 0;
  if (anorm > kTheta13) {
    s = static_cast<int>(std::ceil(std::log2(anorm / kTheta13)));
  }
  const Matrix as = a * std::ldexp(1.0, -s);
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  u_inner += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix u = as * u_inner;
  Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  const Eigen::PartialPivLU<Matrix> lu(v - u);
  Matrix r = lu.solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;

  if (!all_finite(r)) {
    if (norm_guard) {
      throw Error(ErrorCode::kNormGuardExceeded,
                  "matrix exponential overflowed; decrease the step size");
    }
    throw Error(ErrorCode::kNonFinite, "matrix exponential overflowed");
  }
  if (norm_guard) {
    const double rnorm = norm1(r);
    if (rnorm > *norm_guard) {
      throw Error(ErrorCode::kNormGuardExceeded,
                  "1-norm of the matrix exponential is too large; decrease "
                  "the step size",
                  std::nullopt, rnorm);
    }
  }
  return r;
}

FiniteGramian finite_gramian(const Matrix& f, const SymMatrix& q, double t) {
  const Index n = f.rows();
  if (f.cols() != n || q.order() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "finite_gramian shapes");
  }
  if (t == 0.0) return {Matrix::Identity(n, n), SymMatrix::Zero(n)};

  // Augmented exponential on a short interval τ = t/2^s, then doubling
  // G(2τ) = G(τ) + e^{τF}·G(τ)·e^{τFᵀ}. The doubling only adds PSD-like
  // terms, so nothing cancels even when e^{-τF} would be huge.
  int s = 0;
  const double fnorm = norm1(f) * std::abs(t);
  if (fnorm > 0.5) s = static_cast<int>(std::ceil(std::log2(fnorm / 0.5)));
  const double tau = std::ldexp(t, -s);

  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = -tau * f;
  aug.topRightCorner(n, n) = tau * q.matrix();
  aug.bottomRightCorner(n, n) = tau * f.transpose();
  const Matrix e = expm(aug);
  Matrix ef = e.bottomRightCorner(n, n).transpose();
  Matrix g = symmetrize(ef * e.topRightCorner(n, n));

  for (int k = 0; k < s; ++k) {
    g = symmetrize(g + ef * g * ef.transpose());
    ef = ef * ef;
  }
  return {std::move(ef), SymMatrix(std::move(g))};
}

}  // namespace riccati
