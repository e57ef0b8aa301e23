#include <doctest.h>

#include <cmath>
#include <random>

#include "twofluid/lift.hpp"

using namespace twofluid;
using Eigen::Matrix3d;
using Eigen::Vector3d;

namespace {

std::mt19937_64 rng(51);

Vector3d rand_vec(double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vector3d(u(rng), u(rng), u(rng));
}

LiftInputs rand_inputs() {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  LiftInputs in;
  in.rho = 0.5 + u(rng);
  in.Y1 = u(rng);
  in.Y2 = 1.0 - in.Y1;
  in.grad_alpha1 = rand_vec();
  in.v = rand_vec();
  in.W = rand_vec();
  return in;
}

// Manufactured fields for the involution check:
//   zeta = sin(x) cos(y) cos(z), v = grad(zeta)
//   u = (cos(y), sin(z), sin(x) cos(y)),  phi = (p1 - p2)/rho = cos(x) sin(y) cos(z)
Vector3d v_field(const Vector3d& x) {
  return Vector3d(std::cos(x(0)) * std::cos(x(1)) * std::cos(x(2)),
                  -std::sin(x(0)) * std::sin(x(1)) * std::cos(x(2)),
                  -std::sin(x(0)) * std::cos(x(1)) * std::sin(x(2)));
}

Matrix3d grad_v_field(const Vector3d& x) {  // Jacobian J(i,j) = dv_i/dx_j
  const double sx = std::sin(x(0)), cx = std::cos(x(0));
  const double sy = std::sin(x(1)), cy = std::cos(x(1));
  const double sz = std::sin(x(2)), cz = std::cos(x(2));
  Matrix3d J;
  J << -sx * cy * cz, -cx * sy * cz, -cx * cy * sz,
      -cx * sy * cz, -sx * cy * cz, sx * sy * sz,
      -cx * cy * sz, sx * sy * sz, -sx * cy * cz;
  return J;
}

Vector3d u_field(const Vector3d& x) {
  return Vector3d(std::cos(x(1)), std::sin(x(2)), std::sin(x(0)) * std::cos(x(1)));
}

Matrix3d grad_u_field(const Vector3d& x) {
  Matrix3d J = Matrix3d::Zero();
  J(0, 1) = -std::sin(x(1));
  J(1, 2) = std::cos(x(2));
  J(2, 0) = std::cos(x(0)) * std::cos(x(1));
  J(2, 1) = -std::sin(x(0)) * std::sin(x(1));
  return J;
}

Vector3d grad_phi_field(const Vector3d& x) {
  const double sx = std::sin(x(0)), cx = std::cos(x(0));
  const double sy = std::sin(x(1)), cy = std::cos(x(1));
  const double sz = std::sin(x(2)), cz = std::cos(x(2));
  return Vector3d(-sx * sy * cz, cx * cy * cz, -cx * sy * sz);
}

Vector3d rhs_at(const Vector3d& x) {
  return v_rhs(v_field(x), grad_u_field(x), grad_phi_field(x), u_field(x),
               grad_v_field(x));
}

// Central-difference curl of the rhs field at spacing h.
Vector3d discrete_curl(const Vector3d& x, double h) {
  const auto d = [&](int comp, int dir) {
    Vector3d xp = x, xm = x;
    xp(dir) += h;
    xm(dir) -= h;
    return (rhs_at(xp)(comp) - rhs_at(xm)(comp)) / (2.0 * h);
  };
  return Vector3d(d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1));
}

}  // namespace

TEST_CASE("lift is orthogonal to the relative velocity") {
  for (int i = 0; i < 1000; ++i) {
    const LiftInputs in = rand_inputs();
    const double scale = lift_force(in).norm() + 1.0;
    CHECK(std::abs(lift_force(in).dot(in.W)) <= 1e-14 * scale);
  }
}

TEST_CASE("degenerate alignments give zero lift") {
  LiftInputs in = rand_inputs();
  in.v = 2.5 * in.grad_alpha1;  // v parallel to grad alpha
  CHECK(lift_force(in).norm() <= 1e-14);

  // all vectors along x: one-dimensional flow
  in = rand_inputs();
  in.grad_alpha1 = Vector3d(0.7, 0.0, 0.0);
  in.v = Vector3d(-1.2, 0.0, 0.0);
  in.W = Vector3d(2.0, 0.0, 0.0);
  CHECK(lift_force(in).norm() == 0.0);
}

TEST_CASE("lift is antisymmetric under v <-> grad alpha and bilinear") {
  const LiftInputs in = rand_inputs();
  LiftInputs sw = in;
  std::swap(sw.v, sw.grad_alpha1);
  CHECK((lift_force(in) + lift_force(sw)).norm() <= 1e-14 * (lift_force(in).norm() + 1.0));

  // bilinear in (v, W)
  LiftInputs s2 = in;
  s2.v *= 3.0;
  s2.W *= -2.0;
  CHECK((lift_force(s2) + 6.0 * lift_force(in)).norm() <=
        1e-12 * (lift_force(in).norm() + 1.0));
  // f lies in span{v, grad alpha}
  const Vector3d f = lift_force(in);
  const Vector3d n = in.v.cross(in.grad_alpha1);
  CHECK(std::abs(f.dot(n)) <= 1e-13 * (f.norm() * n.norm() + 1.0));
}

TEST_CASE("v equation rhs vanishes at pressure equilibrium with uniform velocity") {
  const Vector3d v = rand_vec();
  const Matrix3d grad_v = Matrix3d::Zero();  // uniform v
  const Vector3d rhs = v_rhs(v, Matrix3d::Zero(), Vector3d::Zero(),
                             rand_vec(), grad_v);
  CHECK(rhs.norm() == 0.0);
}

TEST_CASE("transport structure is Galilean consistent") {
  for (int i = 0; i < 50; ++i) {
    const Vector3d v = rand_vec(), u = rand_vec(), V = rand_vec();
    const Matrix3d gu = grad_u_field(rand_vec());
    const Matrix3d gv = grad_v_field(rand_vec());
    const Vector3d gphi = rand_vec();
    const Vector3d shifted = v_rhs(v, gu, gphi, u + V, gv);
    const Vector3d base = v_rhs(v, gu, gphi, u, gv);
    // rhs(u + V) + (V . grad) v = rhs(u)
    CHECK((shifted + gv * V - base).norm() <= 1e-13 * (base.norm() + 1.0));
  }
}

TEST_CASE("discrete curl of the rhs vanishes at second order") {
  const Vector3d x0(0.37, -0.81, 0.55);
  double prev = -1.0;
  for (const double h : {0.08, 0.04, 0.02}) {
    const double err = discrete_curl(x0, h).norm();
    if (prev > 0.0) {
      const double order = std::log2(prev / err);
      CHECK(order > 1.9);
    }
    prev = err;
  }
  // with the wrong convention ((grad u)^T v instead of (grad u) v) the curl
  // does not vanish: guard against silent convention swaps
  const auto wrong_rhs = [&](const Vector3d& x) {
    return -grad_v_field(x) * u_field(x) - grad_u_field(x) * v_field(x) +
           grad_phi_field(x);
  };
  const double h = 0.02;
  const auto dwrong = [&](int comp, int dir) {
    Vector3d xp = x0, xm = x0;
    xp(dir) += h;
    xm(dir) -= h;
    return (wrong_rhs(xp)(comp) - wrong_rhs(xm)(comp)) / (2.0 * h);
  };
  const Vector3d curl_wrong(dwrong(2, 1) - dwrong(1, 2), dwrong(0, 2) - dwrong(2, 0),
                            dwrong(1, 0) - dwrong(0, 1));
  CHECK(curl_wrong.norm() > 1e-2);
}
