#include "twofluid/lift.hpp"

namespace twofluid {

Eigen::Vector3d lift_force(const LiftInputs& in) {
  // [v (x) grad_alpha - grad_alpha (x) v] W = (grad_alpha . W) v - (v . W) grad_alpha
  const double ga_dot_W = in.grad_alpha1.dot(in.W);
  const double v_dot_W = in.v.dot(in.W);
  return in.rho * in.Y1 * in.Y2 * (ga_dot_W * in.v - v_dot_W * in.grad_alpha1);
}

Eigen::Vector3d v_rhs(const Eigen::Vector3d& v, const Eigen::Matrix3d& grad_u,
                      const Eigen::Vector3d& grad_dp_over_rho, const Eigen::Vector3d& u,
                      const Eigen::Matrix3d& grad_v) {
  // (u . grad) v = J_v u; the (grad u) v term acts through the transposed Jacobian,
  // which is what preserves rot(v) = 0 when v is a gradient field.
  return -grad_v * u - grad_u.transpose() * v + grad_dp_over_rho;
}

}  // namespace twofluid
