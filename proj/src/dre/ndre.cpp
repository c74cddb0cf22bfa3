#include <cmath>

#include "riccati/dre.hpp"
#include "riccati/kernels.hpp"

namespace riccati {

void NdreCoefficients::validate() const {
  const Index nn = M11.rows();
  const Index mm = M22.rows();
  if (M11.cols() != nn || M22.cols() != mm) {
    throw Error(ErrorCode::kNonSquare, "M11 and M22 must be square");
  }
  if (M12.rows() != nn || M12.cols() != mm || M21.rows() != mm ||
      M21.cols() != nn || M0.rows() != mm || M0.cols() != nn) {
    throw Error(ErrorCode::kDimensionMismatch, "NDRE block shapes");
  }
  for (const Matrix* blk : {&M11, &M12, &M21, &M22, &M0}) {
    if (!all_finite(*blk)) throw Error(ErrorCode::kNonFinite, "NDRE blocks");
  }
}

Matrix NdreCoefficients::block() const {
  const Index nn = n();
  const Index mm = m();
  Matrix out(nn + mm, nn + mm);
  out.topLeftCorner(nn, nn) = M11;
  out.topRightCorner(nn, mm) = M12;
  out.bottomLeftCorner(mm, nn) = M21;
  out.bottomRightCorner(mm, mm) = M22;
  return out;
}

Matrix NdreCoefficients::rhs(const Matrix& w) const {
  Matrix out = M21;
  kernels::multiply_add(M22, w, out);
  kernels::multiply_add(w, -M11 - M12 * w, out);
  return out;
}

HamiltonianEmbedding HamiltonianEmbedding::from(const Matrix& a,
                                                const Matrix& b,
                                                const Matrix& c) {
  const Index n = a.rows();
  HamiltonianEmbedding e;
  e.H.resize(2 * n, 2 * n);
  e.H.topLeftCorner(n, n) = a;
  e.H.topRightCorner(n, n) = -b * b.transpose();
  e.H.bottomLeftCorner(n, n) = -c.transpose() * c;
  e.H.bottomRightCorner(n, n) = -a.transpose();
  return e;
}

double HamiltonianEmbedding::structure_defect() const {
  const Index n = H.rows() / 2;
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  const Matrix jh = j * H;
  return (jh - jh.transpose()).cwiseAbs().maxCoeff();
}

NdreCoefficients embed_dre(const Matrix& a, const Matrix& b, const Matrix& c,
                           const SymMatrix& x0) {
  const Index n = a.rows();
  AreProblem p{a, b, c, Matrix::Identity(n, n)};
  return embed_dre(StandardForm(p), x0);
}

NdreCoefficients embed_dre(const StandardForm& s, const SymMatrix& x0) {
  if (x0.order() != s.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "embed_dre X0 order");
  }
  NdreCoefficients c;
  c.M11 = -s.A();
  c.M12 = s.BBt().matrix();
  c.M21 = s.CtC().matrix();
  c.M22 = s.A().transpose();
  c.M0 = x0.matrix();
  return c;
}

long step_count(double h, double tf) {
  if (!(h > 0.0) || !(tf > 0.0) || !std::isfinite(h) || !std::isfinite(tf)) {
    throw Error(ErrorCode::kConfig, "step size and final time must be > 0");
  }
  const double ratio = tf / h;
  const double nearest = std::round(ratio);
  if (std::abs(nearest - ratio) <= 1e-12 * std::max(1.0, ratio)) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::floor(ratio));
}

}  // namespace riccati
