#include "riccati/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riccati {

GalerkinModel build_model(const AreProblem& p, const AreSolution& are,
                          double truncation_tol) {
  const StandardForm s(p);
  const Index n = s.order();
  if (truncation_tol < 0.0) {
    truncation_tol = std::numeric_limits<double>::epsilon();
  }
  if (are.Zinf().rows() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "ARE factor does not match");
  }

  GalerkinModel m;
  m.truncation_tol = truncation_tol;
  const CompactSvd svd = compact_svd(are.Zinf());
  Index k = 0;
  if (svd.rank() > 0) {
    const double cut = truncation_tol * svd.S(0);
    while (k < svd.rank() && svd.S(k) >= cut) ++k;
  }
  m.Q = svd.Q.leftCols(k);
  m.S2 = svd.S.head(k).array().square();
  m.Z = m.Q * svd.S.head(k).asDiagonal();
  m.B_F = m.Q.transpose() * s.B();
  if (k == 0) {
    m.degenerate = true;
    m.A_F.resize(0, 0);
    m.full_residual_norm = norm2_sym(s.CtC());
    return m;
  }

  // A_F = QᵀĀQ − (QᵀB)(BᵀZ)(ZᵀQ)
  const Matrix bz = s.B().transpose() * m.Z;
  m.A_F = m.Q.transpose() * (s.A() * m.Q) -
          m.B_F * (bz * (m.Z.transpose() * m.Q));

  const Matrix xn = m.Z * m.Z.transpose();
  const SymMatrix r = standardized_residual(s, xn);
  m.full_residual_norm = norm2_sym(r);
  m.projected_residual_norm =
      norm2_sym(symmetrize(m.Q.transpose() * r.matrix() * m.Q));
  return m;
}

NdreCoefficients reduced_coefficients(const GalerkinModel& m) {
  NdreCoefficients c;
  c.M11 = -m.A_F;
  c.M12 = -(m.B_F * m.B_F.transpose());
  c.M21 = Matrix::Zero(m.dim(), m.dim());
  c.M22 = m.A_F.transpose();
  c.M0 = m.S2.asDiagonal();
  return c;
}

DreTrajectory solve_reduced(const GalerkinModel& m, double h, double tf,
                            double tol_exp, const StepOptions& opts) {
  if (m.degenerate) {
    const long steps = step_count(h, tf);
    DreTrajectory traj;
    traj.solver = "galerkin";
    traj.h = h;
    traj.tol_exp = tol_exp;
    traj.symmetric = true;
    for (long k = 0; k <= steps; ++k) {
      traj.times.push_back(static_cast<double>(k) * h);
      traj.states.emplace_back(0, 0);
    }
    return traj;
  }
  DreTrajectory traj =
      modified_davison_maki(reduced_coefficients(m), h, tf, tol_exp, true, opts);
  traj.solver = "galerkin";
  return traj;
}

SymMatrix reconstruct(const GalerkinModel& m, const DreTrajectory& r,
                      std::size_t k) {
  const Index n = m.order();
  if (m.degenerate) return SymMatrix::Zero(n);
  const Matrix& xt = r.states.at(k);
  if (xt.rows() != m.dim() || xt.cols() != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "reduced state size");
  }
  // ZZᵀ − QX̃Qᵀ = Q(diag(S²) − X̃)Qᵀ
  Matrix inner = -xt;
  inner.diagonal() += m.S2;
  return SymMatrix(m.Q * symmetrize(inner) * m.Q.transpose());
}

double exp_invariance_gap(const AreProblem& p, const AreSolution& are) {
  const StandardForm s(p);
  const Matrix& z = are.Zinf();
  if (z.cols() == 0) return 0.0;
  const CompactSvd svd = compact_svd(z);
  const Matrix& q = svd.Q;
  const Matrix x = z * z.transpose();
  const double xnorm = x.norm();
  const Matrix a_hat_t = closed_loop(s, are.X).transpose();
  const double tau = 1.0 / norm2(a_hat_t);
  const Matrix a_red = q.transpose() * a_hat_t * q;
  const Matrix s2q = svd.S.array().square().matrix().asDiagonal() *
                     q.transpose();
  double gap = 0.0;
  for (double scale : {0.1, 1.0, 10.0}) {
    const double t = scale * tau;
    const Matrix lhs = expm(t * a_hat_t) * x;
    const Matrix rhs = q * (expm(t * a_red) * s2q);
    gap = std::max(gap, (lhs - rhs).norm() / xnorm);
  }
  return gap;
}

DecayReport entry_decay_check(const std::vector<SymMatrix>& snapshots,
                              const AreSolution& are) {
  const SpectralDecomp eig = sym_eig(are.X);
  const Index n = eig.values.size();
  DecayReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  if (n == 0) return rep;
  const Vector lam = eig.values.cwiseMax(0.0);
  const Vector root = lam.cwiseSqrt();
  const double slack = 1e-10 * lam(0);
  for (const SymMatrix& x : snapshots) {
    const Matrix e = eig.vectors.transpose() * x.matrix() * eig.vectors;
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const double bound = root(i) * root(j);
        const double lhs = std::abs(e(i, j));
        ++rep.checked;
        rep.max_excess = std::max(rep.max_excess, lhs - bound);
        if (bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / bound);
        if (lhs > bound + slack) ++rep.violations;
      }
    }
  }
  return rep;
}

double projection_error_bound(const AreSolution& are, Index k) {
  const Vector lam = sym_eig(are.X).values.cwiseMax(0.0);
  const Index kk = std::clamp<Index>(k, 0, lam.size());
  // (Σλ)² − (Σ_{i≤k}λ)² = tail·(2·head + tail), without the cancellation.
  const double head = lam.head(kk).sum();
  const double tail = lam.tail(lam.size() - kk).sum();
  return std::sqrt(tail * (2.0 * head + tail));
}

double projection_error(const Matrix& x, const Matrix& qk) {
  const Matrix inner = qk.transpose() * x * qk;
  return (x - qk * inner * qk.transpose()).norm();
}

Matrix leading_eigenvectors(const AreSolution& are, Index k) {
  const SpectralDecomp eig = sym_eig(are.X);
  return eig.vectors.leftCols(std::clamp<Index>(k, 0, eig.vectors.cols()));
}

}  // namespace riccati
