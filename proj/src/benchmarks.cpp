#include "riccati/benchmarks.hpp"

#include <cmath>
#include <random>

#include "riccati/kernels.hpp"

namespace riccati {

void BenchmarkSpec::validate() const {
  if (!(horizon > 0.0)) throw Error(ErrorCode::kConfig, "horizon must be > 0");
  for (double h : step_sizes) {
    if (!(h > 0.0)) throw Error(ErrorCode::kConfig, "step sizes must be > 0");
  }
}

namespace {

Matrix tridiagonal(Index n, double sub, double diag, double super) {
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = diag;
    if (i > 0) a(i, i - 1) = sub;
    if (i + 1 < n) a(i, i + 1) = super;
  }
  return a;
}

}  // namespace

ProblemInstance gen_tridiag(Index n) {
  if (n < 2) throw Error(ErrorCode::kConfig, "tridiag needs n >= 2");
  ProblemInstance p;
  p.name = "tridiag";
  p.system.A = tridiagonal(n, 5.0, -1.0, -5.0);
  p.system.B = Matrix::Ones(n, 1);
  p.system.C = Matrix::Ones(1, n);
  p.system.M = Matrix::Identity(n, n);
  p.X0 = SymMatrix::Zero(n);
  p.horizon = 15.0;
  return p;
}

ProblemInstance gen_tridiag_mass(Index n) {
  ProblemInstance p = gen_tridiag(n);
  p.name = "tridiag_mass";
  p.system.M = tridiagonal(n, 1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0);
  return p;
}

ProblemInstance gen_conv_diff(Index grid_n, double vx, double vy) {
  if (grid_n < 2) throw Error(ErrorCode::kConfig, "conv_diff needs gridN >= 2");
  const Index n = grid_n * grid_n;
  const double h = 1.0 / static_cast<double>(grid_n + 1);
  const double d = 1.0 / (h * h);
  const double cx = vx / (2.0 * h);
  const double cy = vy / (2.0 * h);

  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, 1);
  Index nearest = 0;
  double nearest_dist = HUGE_VAL;
  for (Index j = 0; j < grid_n; ++j) {
    for (Index i = 0; i < grid_n; ++i) {
      const Index row = i + j * grid_n;
      a(row, row) = -4.0 * d;
      if (i > 0) a(row, row - 1) = d - cx;
      if (i + 1 < grid_n) a(row, row + 1) = d + cx;
      if (j > 0) a(row, row - grid_n) = d - cy;
      if (j + 1 < grid_n) a(row, row + grid_n) = d + cy;

      const double x = static_cast<double>(i + 1) * h;
      const double y = static_cast<double>(j + 1) * h;
      constexpr double eps = 1e-12;
      if (x >= 0.1 - eps && x <= 0.3 + eps && y >= 0.1 - eps &&
          y <= 0.3 + eps) {
        b(row) = 1.0;
      }
      const double dist = std::hypot(x - 0.2, y - 0.2);
      if (dist < nearest_dist) {
        nearest_dist = dist;
        nearest = row;
      }
    }
  }
  if (b.sum() == 0.0) b(nearest) = 1.0;
  b /= b.norm();

  ProblemInstance p;
  p.name = "conv_diff";
  p.system.A = std::move(a);
  p.system.B = std::move(b);
  p.system.C = Matrix::Constant(1, n, 1.0 / static_cast<double>(n));
  p.system.M = Matrix::Identity(n, n);
  p.X0 = SymMatrix::Zero(n);
  p.horizon = 0.125;
  return p;
}

ProblemInstance gen_scalar(double a, double b, double c, double horizon) {
  ProblemInstance p;
  p.name = "scalar";
  p.system.A = Matrix::Constant(1, 1, a);
  p.system.B = Matrix::Constant(1, 1, b);
  p.system.C = Matrix::Constant(1, 1, c);
  p.system.M = Matrix::Identity(1, 1);
  p.X0 = SymMatrix::Zero(1);
  p.horizon = horizon;
  return p;
}

ProblemInstance gen_diagonal_rank1(Index n) {
  if (n < 1) throw Error(ErrorCode::kConfig, "diag_rank1 needs n >= 1");
  ProblemInstance p;
  p.name = "diag_rank1";
  p.system.A = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) p.system.A(i, i) = -static_cast<double>(i + 1);
  p.system.B = Matrix::Ones(n, 1);
  p.system.C = Matrix::Zero(1, n);
  p.system.C(0, 0) = 1.0;
  p.system.M = Matrix::Identity(n, n);
  p.X0 = SymMatrix::Zero(n);
  p.horizon = 5.0;
  return p;
}

ProblemInstance gen_benchmark(const std::string& name, Index size) {
  if (name == "tridiag") return gen_tridiag(size);
  if (name == "tridiag_mass") return gen_tridiag_mass(size);
  if (name == "conv_diff") return gen_conv_diff(size);
  if (name == "scalar") return gen_scalar(0.0, 1.0, 1.0);
  if (name == "diag_rank1") return gen_diagonal_rank1(size);
  throw Error(ErrorCode::kConfig, "unknown benchmark '" + name + "'");
}

double power_norm2(const Matrix& m) {
  const Index n = m.rows();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = dist(rng);
  v.normalize();
  double lambda = 0.0;
  // For symmetric M, ‖Mv‖ converges to max |λ| even when ±λ tie.
  for (int it = 0; it < 500; ++it) {
    Vector w = m * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double change = std::abs(nw - lambda);
    lambda = nw;
    v = w / nw;
    if (change <= 1e-8 * lambda) break;
  }
  return lambda;
}

ErrorMetrics absolute_metrics(const SymMatrix& x, const SymMatrix& x_ref) {
  if (x.order() != x_ref.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "error_metrics shapes");
  }
  const Matrix diff = x.matrix() - x_ref.matrix();
  ErrorMetrics e;
  e.abs2 = power_norm2(diff);
  e.absF = kernels::frobenius_distance(x.matrix(), x_ref.matrix());
  return e;
}

ErrorMetrics error_metrics(const SymMatrix& x, const SymMatrix& x_ref) {
  ErrorMetrics e = absolute_metrics(x, x_ref);
  const double ref2 = power_norm2(x_ref.matrix());
  const double refF = x_ref.matrix().norm();
  if (!(refF > 0.0) || !(ref2 > 0.0)) {
    throw Error(ErrorCode::kZeroReference, "reference is zero");
  }
  e.rel2 = e.abs2 / ref2;
  e.relF = e.absF / refF;
  return e;
}

double stationary_gap(const SymMatrix& x, const AreSolution& are) {
  return power_norm2(x.matrix() - are.X.matrix());
}

}  // namespace riccati
