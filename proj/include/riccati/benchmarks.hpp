#pragma once

#include <string>
#include <vector>

#include "riccati/are.hpp"
#include "riccati/problem.hpp"

namespace riccati {

struct BenchmarkSpec {
  std::string name;
  Index size = 0;  // n, or gridN for conv_diff
  double horizon = 1.0;
  std::vector<double> step_sizes;
  std::vector<double> truncation_tols;

  void validate() const;
};

/// A tridiagonal with (sub, diag, super) = (5, −1, −5), B = ones(n,1),
/// C = Bᵀ, X0 = 0, M = I, horizon 15.
ProblemInstance gen_tridiag(Index n);

/// gen_tridiag with the mass matrix M = tridiag(1/6, 4/6, 1/6).
ProblemInstance gen_tridiag_mass(Index n);

/// Convection–diffusion on the unit square, gridN² interior nodes,
/// A = Δ_h + v·∇_h (central differences, v = (10, 100)), B the normalized
/// indicator of [0.1, 0.3]², C = ones(1,n)/n, X0 = 0, horizon 0.125.
ProblemInstance gen_conv_diff(Index grid_n, double vx = 10.0,
                              double vy = 100.0);

/// Scalar problem ẋ = 2ax − b²x² + c².
ProblemInstance gen_scalar(double a, double b, double c, double horizon = 1.0);

/// A = diag(−1, …, −n), B = ones(n,1), C = e₁ᵀ; rank(X∞) = 1.
ProblemInstance gen_diagonal_rank1(Index n);

/// Dispatch by name: tridiag, tridiag_mass, conv_diff, scalar, diag_rank1.
ProblemInstance gen_benchmark(const std::string& name, Index size);

struct ErrorMetrics {
  double abs2 = 0.0;
  double rel2 = 0.0;
  double absF = 0.0;
  double relF = 0.0;
};

/// Spectral norm of a symmetric matrix by power iteration on M² from a
/// fixed pseudo-random start (tol 1e-8, at most 500 iterations).
double power_norm2(const Matrix& m);

/// Throws kZeroReference when x_ref = 0.
ErrorMetrics error_metrics(const SymMatrix& x, const SymMatrix& x_ref);
/// Absolute parts only; never throws on a zero reference.
ErrorMetrics absolute_metrics(const SymMatrix& x, const SymMatrix& x_ref);

/// ‖X − X∞‖₂
double stationary_gap(const SymMatrix& x, const AreSolution& are);

}  // namespace riccati
