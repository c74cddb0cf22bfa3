#include "riccati/dre.hpp"

namespace riccati {

SplittingIntegrator::SplittingIntegrator(const StandardForm& s, double h,
                                         SplittingScheme scheme)
    : h_(h), scheme_(scheme), bbt_(s.BBt()) {
  if (!(h > 0.0)) throw Error(ErrorCode::kConfig, "h must be > 0");
  const Matrix at = s.A().transpose();
  FiniteGramian full = finite_gramian(at, s.CtC(), h);
  exp_full_ = std::move(full.exp_tf);
  gram_full_ = std::move(full.integral);
  if (scheme == SplittingScheme::kStrang) {
    FiniteGramian half = finite_gramian(at, s.CtC(), 0.5 * h);
    exp_half_ = std::move(half.exp_tf);
    gram_half_ = std::move(half.integral);
  }
}

SymMatrix SplittingIntegrator::affine_flow(const SymMatrix& x,
                                           bool half) const {
  const Matrix& e = half ? exp_half_ : exp_full_;
  const SymMatrix& g = half ? gram_half_ : gram_full_;
  if (e.size() == 0) throw Error(ErrorCode::kConfig, "half step not prepared");
  return SymMatrix(e * x.matrix() * e.transpose() + g.matrix());
}

SymMatrix SplittingIntegrator::nonlinear_flow(const SymMatrix& x,
                                              double tau) const {
  const Index n = x.order();
  const Matrix lhs = Matrix::Identity(n, n) + tau * x.matrix() * bbt_.matrix();
  try {
    return SymMatrix(LuFactor(lhs).solve(x.matrix()));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kSingularNonlinearFlow,
                "I + τ·X·BBᵀ is singular; X is not semidefinite",
                std::nullopt, err.value());
  }
}

SymMatrix SplittingIntegrator::step(const SymMatrix& x) const {
  if (scheme_ == SplittingScheme::kLie) {
    return nonlinear_flow(affine_flow(x, false), h_);
  }
  return affine_flow(nonlinear_flow(affine_flow(x, true), h_), true);
}

SymMatrix splitting_step(const Matrix& a, const Matrix& b, const Matrix& c,
                         const SymMatrix& x, double h,
                         SplittingScheme scheme) {
  const StandardForm s(AreProblem{a, b, c, Matrix()});
  return SplittingIntegrator(s, h, scheme).step(x);
}

DreTrajectory splitting_solve(const StandardForm& s, const SymMatrix& x0,
                              double h, double tf, SplittingScheme scheme) {
  const long steps = step_count(h, tf);
  const SplittingIntegrator integrator(s, h, scheme);
  DreTrajectory traj;
  traj.solver = scheme == SplittingScheme::kLie ? "lie" : "strang";
  traj.h = h;
  traj.symmetric = true;
  traj.times.push_back(0.0);
  traj.states.push_back(x0.matrix());
  SymMatrix x = x0;
  for (long k = 1; k <= steps; ++k) {
    x = integrator.step(x);
    traj.times.push_back(static_cast<double>(k) * h);
    traj.states.push_back(x.matrix());
  }
  return traj;
}

}  // namespace riccati
