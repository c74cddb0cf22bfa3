#pragma once

#include <cmath>
#include <random>

#include "riccati/linalg.hpp"

namespace riccati::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline Matrix random_matrix(Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng());
  }
  return m;
}

inline Matrix random_symmetric(Index n, double scale = 1.0) {
  const Matrix m = random_matrix(n, n, scale);
  return 0.5 * (m + m.transpose());
}

/// Random matrix shifted so every eigenvalue has real part ≤ −margin.
inline Matrix random_stable(Index n, double margin = 0.5) {
  Matrix a = random_matrix(n, n, 1.0 / std::sqrt(static_cast<double>(n)));
  const double shift = max_real_eigenvalue(a) + margin;
  a -= shift * Matrix::Identity(n, n);
  return a;
}

inline Matrix random_well_conditioned(Index n) {
  return random_matrix(n, n, 0.3) + 2.0 * Matrix::Identity(n, n);
}

/// Truncated Taylor series, valid for small ‖A‖.
inline Matrix taylor_expm(const Matrix& a, int terms) {
  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Kronecker-vectorized F·X + X·Fᵀ + G = 0, dense solve; for n ≤ 40.
inline Matrix kron_lyapunov(const Matrix& f, const Matrix& g) {
  const Index n = f.rows();
  const Matrix eye = Matrix::Identity(n, n);
  Matrix k = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      // vec(F X) = (I ⊗ F) vec X,  vec(X Fᵀ) = (F ⊗ I) vec X
      k.block(j * n, j * n, n, n) += eye(i, j) * f;
      k.block(i * n, j * n, n, n) += f(i, j) * eye;
    }
  }
  const Vector rhs = -Eigen::Map<const Vector>(g.data(), n * n);
  const Vector x = k.fullPivLu().solve(rhs);
  return Eigen::Map<const Matrix>(x.data(), n, n);
}

/// ∫₀ᵀ e^{sF}·G·e^{sFᵀ} ds by composite trapezoid with `steps` panels.
inline Matrix trapezoid_gramian(const Matrix& f, const Matrix& g, double t,
                                int steps) {
  const double dt = t / steps;
  const Matrix step = taylor_expm(dt * f, 30);
  Matrix e = Matrix::Identity(f.rows(), f.cols());
  Matrix sum = 0.5 * g;
  for (int k = 1; k <= steps; ++k) {
    e = step * e;
    const Matrix v = e * g * e.transpose();
    sum += (k == steps ? 0.5 : 1.0) * v;
  }
  return dt * sum;
}

inline double rel_fro(const Matrix& x, const Matrix& ref) {
  return (x - ref).norm() / std::max(1.0, ref.norm());
}

}  // namespace riccati::testing
