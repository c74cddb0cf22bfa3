#include <algorithm>
#include <vector>

#include "riccati/linalg.hpp"

namespace riccati {

namespace {

constexpr double kDeflationTol = 1e-10;

// Orthogonalizes v against the first `cols` columns of basis (two passes of
// classical Gram–Schmidt) and returns the residual norm.
double orthogonalize(const Matrix& basis, Index cols, Vector& v) {
  for (int pass = 0; pass < 2; ++pass) {
    if (cols == 0) break;
    const Vector coeff = basis.leftCols(cols).transpose() * v;
    v.noalias() -= basis.leftCols(cols) * coeff;
  }
  return v.norm();
}

}  // namespace

Matrix krylov_range(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::kNonSquare, "krylov_range A");
  if (b.rows() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "krylov_range B rows");
  }
  Matrix basis(n, n);
  Index rank = 0;
  Matrix block = b;
  while (block.cols() > 0 && rank < n) {
    // Deflate relative to the largest column of the candidate block.
    double ref = 0.0;
    for (Index j = 0; j < block.cols(); ++j) {
      ref = std::max(ref, block.col(j).norm());
    }
    if (ref == 0.0) break;
    const Index first_new = rank;
    for (Index j = 0; j < block.cols() && rank < n; ++j) {
      Vector v = block.col(j);
      const double r = orthogonalize(basis, rank, v);
      if (r > kDeflationTol * ref) {
        basis.col(rank++) = v / r;
      }
    }
    const Index added = rank - first_new;
    block = a * basis.middleCols(first_new, added);
  }
  return basis.leftCols(rank);
}

}  // namespace riccati
