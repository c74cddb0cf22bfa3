#include "riccati/dre.hpp"

namespace riccati {

namespace {

// X* − Eᵀ·X̃·(I − G·X̃)⁻¹·E
SymMatrix assemble(const SymMatrix& x_star, const SymMatrix& x_tilde,
                   const Matrix& e, const Matrix& g) {
  const Index n = x_star.order();
  Matrix bracket = Matrix::Identity(n, n) - g * x_tilde.matrix();
  Matrix y;
  try {
    y = LuFactor(bracket).solve(e);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kSingularBracket,
                "I − G(t)·X̃ is singular; X* may not solve the ARE",
                std::nullopt, err.value());
  }
  return SymMatrix(x_star.matrix() -
                   e.transpose() * (x_tilde.matrix() * y));
}

void check_time(double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kConfig, "t must be >= 0");
}

}  // namespace

SolutionFormulaI::SolutionFormulaI(const StandardForm& s, const SymMatrix& x0,
                                   const SymMatrix& x_star)
    : a_hat_(riccati::closed_loop(s, x_star)),
      bbt_(s.BBt()),
      x_star_(x_star),
      x_tilde_(x_star.matrix() - x0.matrix()) {
  if (x0.order() != s.order() || x_star.order() != s.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "formula I operand orders");
  }
}

SymMatrix SolutionFormulaI::at(double t) const {
  check_time(t);
  if (t == 0.0) return SymMatrix(x_star_.matrix() - x_tilde_.matrix());
  const FiniteGramian g = finite_gramian(a_hat_, bbt_, t);
  return assemble(x_star_, x_tilde_, g.exp_tf, g.integral);
}

SolutionFormulaII::SolutionFormulaII(const StandardForm& s,
                                     const SymMatrix& x0,
                                     const SymMatrix& x_inf)
    : a_hat_(riccati::closed_loop(s, x_inf)),
      x_inf_(x_inf),
      x_tilde_(x_inf.matrix() - x0.matrix()) {
  if (x0.order() != s.order() || x_inf.order() != s.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "formula II operand orders");
  }
  x_l_ = lyapunov_solve(a_hat_, s.BBt());
}

SymMatrix SolutionFormulaII::at(double t) const {
  check_time(t);
  if (t == 0.0) return SymMatrix(x_inf_.matrix() - x_tilde_.matrix());
  const Matrix e = expm(t * a_hat_);
  const Matrix g = x_l_.matrix() - e * x_l_.matrix() * e.transpose();
  return assemble(x_inf_, x_tilde_, e, g);
}

SymMatrix solution_formula_I(const Matrix& a, const Matrix& b, const Matrix& c,
                             const SymMatrix& x0, const SymMatrix& x_star,
                             double t) {
  const StandardForm s(AreProblem{a, b, c, Matrix()});
  return SolutionFormulaI(s, x0, x_star).at(t);
}

SymMatrix solution_formula_II(const Matrix& a, const Matrix& b,
                              const Matrix& c, const SymMatrix& x0,
                              const AreSolution& are, double t) {
  const StandardForm s(AreProblem{a, b, c, Matrix()});
  return SolutionFormulaII(s, x0, are.X).at(t);
}

}  // namespace riccati
