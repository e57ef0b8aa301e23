#ifndef TWOFLUID_LIFT_HPP
#define TWOFLUID_LIFT_HPP

#include <Eigen/Dense>

namespace twofluid {

// Pointwise inputs of the multi-dimensional lift force
//   f = rho Y1 Y2 [v (x) grad_alpha1 - grad_alpha1 (x) v] W,
// with v = grad(zeta) the velocity-potential gradient.
struct LiftInputs {
  double rho = 1.0;
  double Y1 = 0.5, Y2 = 0.5;
  Eigen::Vector3d grad_alpha1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d W = Eigen::Vector3d::Zero();
};

// f = rho Y1 Y2 ((grad_alpha1 . W) v - (v . W) grad_alpha1); satisfies W . f = 0.
Eigen::Vector3d lift_force(const LiftInputs& in);

// Right-hand side dv/dt of
//   dv/dt + (u . grad) v + (grad u) v - grad((p1 - p2)/rho) = 0,
// where grad u acts as the transposed Jacobian. Jacobians are passed with the
// convention J(i, j) = d(component i)/d(x_j).
Eigen::Vector3d v_rhs(const Eigen::Vector3d& v, const Eigen::Matrix3d& grad_u,
                      const Eigen::Vector3d& grad_dp_over_rho,
                      const Eigen::Vector3d& u, const Eigen::Matrix3d& grad_v);

}  // namespace twofluid

#endif
