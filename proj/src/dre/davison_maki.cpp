#include <cmath>

#include "riccati/dre.hpp"
#include "riccati/kernels.hpp"

namespace riccati {

namespace {

struct ThetaBlocks {
  Matrix t11, t12, t21, t22;
};

ThetaBlocks partition(const Matrix& theta, Index n, Index m) {
  return {theta.topLeftCorner(n, n), theta.topRightCorner(n, m),
          theta.bottomLeftCorner(m, n), theta.bottomRightCorner(m, m)};
}

StepDiagnostics diagnose(const Matrix& u, const Matrix& v) {
  StepDiagnostics d;
  Eigen::JacobiSVD<Matrix> svd(u);
  const Vector& s = svd.singularValues();
  d.norm_u = s(0);
  d.cond_u = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : HUGE_VAL;
  d.norm_v = norm2(v);
  return d;
}

// W = V·U⁻¹, computed as (U⁻ᵀ·Vᵀ)ᵀ.
Matrix right_divide(const Matrix& v, const Matrix& u, long step,
                    double cond_abort) {
  if (!all_finite(u) || !all_finite(v)) {
    throw Error(ErrorCode::kNormOverflow, "iterates overflowed", step);
  }
  Eigen::PartialPivLU<Matrix> lu(u);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || 1.0 / rc > cond_abort) {
    throw Error(ErrorCode::kSingularU,
                "U is numerically singular; shorten the horizon or step",
                step, rc > 0.0 ? 1.0 / rc : HUGE_VAL);
  }
  const Matrix wt = lu.transpose().solve(v.transpose());
  return wt.transpose();
}

DreTrajectory start_trajectory(const NdreCoefficients& c, std::string solver,
                               double h, long steps, bool diagnostics) {
  DreTrajectory traj;
  traj.solver = std::move(solver);
  traj.h = h;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(c.M0);
  if (diagnostics) {
    traj.diagnostics.push_back(
        diagnose(Matrix::Identity(c.n(), c.n()), c.M0));
  }
  return traj;
}

}  // namespace

DreTrajectory davison_maki(const NdreCoefficients& c, double h, double tf,
                           DmVariant variant, const StepOptions& opts) {
  c.validate();
  const long steps = step_count(h, tf);
  const Index n = c.n();
  const Index m = c.m();
  const Matrix theta_h = expm(h * c.block());
  DreTrajectory traj = start_trajectory(
      c, variant == DmVariant::kExpUpdate ? "dm-exp" : "dm-uv", h, steps,
      opts.diagnostics);

  Matrix theta = theta_h;
  const ThetaBlocks th = partition(theta_h, n, m);
  Matrix u = Matrix::Identity(n, n);
  Matrix v = c.M0;
  for (long k = 1; k <= steps; ++k) {
    if (variant == DmVariant::kExpUpdate) {
      const ThetaBlocks tk = partition(theta, n, m);
      u = kernels::affine_product(tk.t11, tk.t12, c.M0);
      v = kernels::affine_product(tk.t21, tk.t22, c.M0);
      theta = theta * theta_h;
    } else {
      Matrix un = th.t11 * u;
      kernels::multiply_add(th.t12, v, un);
      Matrix vn = th.t21 * u;
      kernels::multiply_add(th.t22, v, vn);
      u = std::move(un);
      v = std::move(vn);
    }
    traj.states.push_back(right_divide(v, u, k, opts.cond_abort));
    traj.times.push_back(static_cast<double>(k) * h);
    if (opts.diagnostics) traj.diagnostics.push_back(diagnose(u, v));
  }
  return traj;
}

DreTrajectory modified_davison_maki(const NdreCoefficients& c, double h,
                                    double tf, double tol_exp,
                                    bool symmetrize_states,
                                    const StepOptions& opts) {
  c.validate();
  if (!(tol_exp > 0.0)) {
    throw Error(ErrorCode::kConfig, "tol_exp must be positive");
  }
  const long steps = step_count(h, tf);
  const Index n = c.n();
  const Index m = c.m();
  if (symmetrize_states && n != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "symmetrization needs a square W");
  }
  const Matrix theta = expm(h * c.block(), tol_exp);
  const ThetaBlocks th = partition(theta, n, m);

  DreTrajectory traj = start_trajectory(c, "moddm", h, steps, opts.diagnostics);
  traj.tol_exp = tol_exp;
  traj.symmetric = symmetrize_states;
  Matrix w = c.M0;
  for (long k = 1; k <= steps; ++k) {
    const Matrix u = kernels::affine_product(th.t11, th.t12, w);
    const Matrix v = kernels::affine_product(th.t21, th.t22, w);
    w = right_divide(v, u, k, opts.cond_abort);
    if (symmetrize_states) w = symmetrize(w);
    traj.states.push_back(w);
    traj.times.push_back(static_cast<double>(k) * h);
    if (opts.diagnostics) traj.diagnostics.push_back(diagnose(u, v));
  }
  return traj;
}

std::vector<RangeGapSample> range_equivalence_series(
    const NdreCoefficients& c, double h, long k) {
  c.validate();
  const Index n = c.n();
  const Index m = c.m();
  const Matrix theta_h = expm(h * c.block());
  const ThetaBlocks th = partition(theta_h, n, m);

  std::vector<RangeGapSample> out;
  out.reserve(static_cast<std::size_t>(std::max(k, 0L)));
  Matrix theta = theta_h;
  Matrix w = c.M0;
  Matrix dm(n + m, n);
  Matrix mod(n + m, n);
  for (long step = 1; step <= k; ++step) {
    const ThetaBlocks tk = partition(theta, n, m);
    dm.topRows(n) = kernels::affine_product(tk.t11, tk.t12, c.M0);
    dm.bottomRows(m) = kernels::affine_product(tk.t21, tk.t22, c.M0);
    mod.topRows(n) = kernels::affine_product(th.t11, th.t12, w);
    mod.bottomRows(m) = kernels::affine_product(th.t21, th.t22, w);

    RangeGapSample s;
    s.step = step;
    s.cond_u_dm = cond2(dm.topRows(n));
    s.gap = subspace_gap(orthonormal_basis(dm), orthonormal_basis(mod));
    out.push_back(s);

    w = right_divide(mod.bottomRows(m), mod.topRows(n), step, HUGE_VAL);
    theta = theta * theta_h;
  }
  return out;
}

double range_equivalence_check(const NdreCoefficients& c, double h, long k) {
  if (k < 1) throw Error(ErrorCode::kConfig, "k must be >= 1");
  return range_equivalence_series(c, h, k).back().gap;
}

}  // namespace riccati
