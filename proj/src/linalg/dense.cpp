#include <algorithm>
#include <cmath>
#include <numeric>

#include "riccati/linalg.hpp"

namespace riccati {

namespace {

constexpr double kSingularRcond = 1e-14;

void check_sym_input(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNonSquare, "symmetric matrix must be square");
  }
  if (!all_finite(m)) {
    throw Error(ErrorCode::kNonFinite, "symmetric matrix entries");
  }
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& m) {
  check_sym_input(m);
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix::SymMatrix(Matrix&& m) {
  check_sym_input(m);
  m_ = std::move(m);
  m_ = 0.5 * (m_ + m_.transpose()).eval();
}

SymMatrix SymMatrix::Zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }

SymMatrix SymMatrix::Identity(Index n) {
  return SymMatrix(Matrix::Identity(n, n));
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double norm1(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double norm2_sym(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double cond2(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double max_real_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Matrix> es(m, false);
  return es.eigenvalues().real().maxCoeff();
}

double min_eigenvalue_sym(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix orthonormal_basis(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

double subspace_gap(const Matrix& q1, const Matrix& q2) {
  if (q1.rows() != q2.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "subspace_gap ambient sizes");
  }
  if (q1.rows() == 0) return 0.0;
  const Matrix p = q1 * q1.transpose() - q2 * q2.transpose();
  return norm2_sym(p);
}

LuFactor::LuFactor(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kNonSquare, "LU needs a square matrix");
  }
  if (!all_finite(a)) throw Error(ErrorCode::kNonFinite, "LU input");
  if (a.rows() == 0) {
    rcond_ = 1.0;
    return;
  }
  lu_.compute(a);
  rcond_ = lu_.rcond();
  if (!(rcond_ >= kSingularRcond)) {
    throw Error(ErrorCode::kSingularMatrix, "matrix is numerically singular",
                std::nullopt, rcond_ > 0.0 ? 1.0 / rcond_ : HUGE_VAL);
  }
}

Matrix LuFactor::solve(const Matrix& b) const {
  if (b.rows() != size()) {
    throw Error(ErrorCode::kDimensionMismatch, "LU solve right-hand side");
  }
  if (size() == 0) return Matrix(0, b.cols());
  return lu_.solve(b);
}

Matrix LuFactor::solve_transposed(const Matrix& b) const {
  if (b.rows() != size()) {
    throw Error(ErrorCode::kDimensionMismatch, "LU solve right-hand side");
  }
  if (size() == 0) return Matrix(0, b.cols());
  return lu_.transpose().solve(b);
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  return LuFactor(a).solve(b);
}

SpectralDecomp sym_eig(const SymMatrix& s) {
  const Index n = s.order();
  if (n == 0) return {Vector(0), Matrix(0, 0)};
  // Eigen caps the implicit QR sweeps at 30·n internally.
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure,
                "symmetric eigensolver hit its iteration cap");
  }
  // Eigen returns ascending order.
  SpectralDecomp out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

CompactSvd compact_svd(const Matrix& z) {
  if (!all_finite(z)) throw Error(ErrorCode::kNonFinite, "compact_svd input");
  CompactSvd out;
  if (z.size() == 0) {
    out.Q = Matrix(z.rows(), 0);
    out.S = Vector(0);
    out.V = Matrix(z.cols(), 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  const double cut = 1e-14 * s(0);
  while (rank < s.size() && s(rank) > cut && s(rank) > 0.0) ++rank;
  out.Q = svd.matrixU().leftCols(rank);
  out.S = s.head(rank);
  out.V = svd.matrixV().leftCols(rank);
  return out;
}

}  // namespace riccati
