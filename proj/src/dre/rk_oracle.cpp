#include "riccati/dre.hpp"

namespace riccati {

DreTrajectory rk_oracle(const NdreCoefficients& c, double h, double tf) {
  c.validate();
  const long steps = step_count(h, tf);
  DreTrajectory traj;
  traj.solver = "rk-oracle";
  traj.h = h;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(c.M0);

  Matrix w = c.M0;
  for (long k = 1; k <= steps; ++k) {
    const Matrix k1 = c.rhs(w);
    const Matrix k2 = c.rhs(w + 0.5 * h * k1);
    const Matrix k3 = c.rhs(w + 0.5 * h * k2);
    const Matrix k4 = c.rhs(w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(w)) {
      throw Error(ErrorCode::kNonFinite, "RK4 iterate blew up", k);
    }
    traj.states.push_back(w);
    traj.times.push_back(static_cast<double>(k) * h);
  }
  return traj;
}

}  // namespace riccati
