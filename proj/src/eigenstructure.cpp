#include "twofluid/eigenstructure.hpp"

#include <cmath>
#include <sstream>

namespace twofluid {

namespace {

struct Derived {
  double a1, a2, r1, r2, c1, c2, u1, u2, p1, p2;
  double m1, m2, rho, Y1, Y2, u, W;
};

Derived derive(const MixturePrimitive& U, const StiffenedGas& eos1,
               const StiffenedGas& eos2) {
  Derived d;
  d.a1 = U.alpha1;
  d.a2 = 1.0 - U.alpha1;
  d.r1 = U.phase1.rho;
  d.r2 = U.phase2.rho;
  d.u1 = U.phase1.u;
  d.u2 = U.phase2.u;
  d.p1 = U.phase1.p;
  d.p2 = U.phase2.p;
  d.c1 = eos1.sound_speed(d.r1, d.p1);
  d.c2 = eos2.sound_speed(d.r2, d.p2);
  d.m1 = d.a1 * d.r1;
  d.m2 = d.a2 * d.r2;
  d.rho = d.m1 + d.m2;
  d.Y1 = d.m1 / d.rho;
  d.Y2 = d.m2 / d.rho;
  d.u = d.Y1 * d.u1 + d.Y2 * d.u2;
  d.W = d.u1 - d.u2;
  return d;
}

}  // namespace

Vector7 primitive_to_quasilinear(const MixturePrimitive& U, const StiffenedGas& eos1,
                                 const StiffenedGas& eos2) {
  Vector7 v;
  v << U.alpha1, U.phase1.u, U.phase1.p, eos1.entropy(U.phase1.rho, U.phase1.p),
      U.phase2.u, U.phase2.p, eos2.entropy(U.phase2.rho, U.phase2.p);
  return v;
}

MixturePrimitive quasilinear_to_primitive(const Vector7& V, const StiffenedGas& eos1,
                                          const StiffenedGas& eos2) {
  MixturePrimitive U;
  U.alpha1 = V(0);
  U.phase1.u = V(1);
  U.phase1.p = V(2);
  U.phase1.rho = eos1.density_from_entropy_pressure(V(3), V(2));
  U.phase2.u = V(4);
  U.phase2.p = V(5);
  U.phase2.rho = eos2.density_from_entropy_pressure(V(6), V(5));
  return U;
}

Matrix7 assemble_quasilinear(const MixturePrimitive& U, const StiffenedGas& eos1,
                             const StiffenedGas& eos2) {
  require_admissible(U, eos1, eos2);
  const Derived d = derive(U, eos1, eos2);
  Matrix7 M = Matrix7::Zero();
  M(0, 0) = d.u;
  const double dp_over_rho = (d.p1 - d.p2) / d.rho;
  // phase-1 block (rows/cols 1..3) and its alpha column
  M(1, 0) = dp_over_rho;
  M(2, 0) = -(d.r1 * d.c1 * d.c1 / d.a1) * (d.u - d.u1);
  M(1, 1) = d.u1;
  M(1, 2) = 1.0 / d.r1;
  M(2, 1) = d.r1 * d.c1 * d.c1;
  M(2, 2) = d.u1;
  M(3, 3) = d.u1;
  // phase-2 block (rows/cols 4..6)
  M(4, 0) = dp_over_rho;
  M(5, 0) = (d.r2 * d.c2 * d.c2 / d.a2) * (d.u - d.u2);
  M(4, 4) = d.u2;
  M(4, 5) = 1.0 / d.r2;
  M(5, 4) = d.r2 * d.c2 * d.c2;
  M(5, 5) = d.u2;
  M(6, 6) = d.u2;
  return M;
}

double resonance_margin(const MixturePrimitive& U, const StiffenedGas& eos1,
                        const StiffenedGas& eos2) {
  const Derived d = derive(U, eos1, eos2);
  double m = std::abs(d.u - (d.u1 + d.c1)) / d.c1;
  m = std::min(m, std::abs(d.u - (d.u1 - d.c1)) / d.c1);
  m = std::min(m, std::abs(d.u - (d.u2 + d.c2)) / d.c2);
  m = std::min(m, std::abs(d.u - (d.u2 - d.c2)) / d.c2);
  return m;
}

Vector7 analytic_eigenvalues(const MixturePrimitive& U, const StiffenedGas& eos1,
                             const StiffenedGas& eos2) {
  const Derived d = derive(U, eos1, eos2);
  Vector7 lam;
  lam << d.u, d.u1 + d.c1, d.u1 - d.c1, d.u1, d.u2 + d.c2, d.u2 - d.c2, d.u2;
  return lam;
}

namespace {

// Offending (phase, sign) pair of the smallest |u - (u_k +- c_k)| / c_k.
void nearest_resonance(const Derived& d, int* phase, int* sign) {
  double best = std::abs(d.u - (d.u1 + d.c1)) / d.c1;
  *phase = 1;
  *sign = +1;
  const double m1m = std::abs(d.u - (d.u1 - d.c1)) / d.c1;
  if (m1m < best) {
    best = m1m;
    *phase = 1;
    *sign = -1;
  }
  const double m2p = std::abs(d.u - (d.u2 + d.c2)) / d.c2;
  if (m2p < best) {
    best = m2p;
    *phase = 2;
    *sign = +1;
  }
  const double m2m = std::abs(d.u - (d.u2 - d.c2)) / d.c2;
  if (m2m < best) {
    *phase = 2;
    *sign = -1;
  }
}

[[noreturn]] void throw_resonance(const MixturePrimitive& U, const Derived& d,
                                  double margin) {
  int phase, sign;
  nearest_resonance(d, &phase, &sign);
  // Special closure exception of the resonance remark: if p_I = p_k - rho_k c_k^2
  // the system stays hyperbolic; we report the flag but do not build eigenvectors.
  const double pI = interfacial_pressure(U, Closure::NewModel);
  const double pk = phase == 1 ? d.p1 : d.p2;
  const double rc2 = phase == 1 ? d.r1 * d.c1 * d.c1 : d.r2 * d.c2 * d.c2;
  const bool exception = std::abs(pI - (pk - rc2)) <= 1e-10 * (std::abs(pI) + rc2);
  std::ostringstream os;
  os << "resonance: u within " << margin << " of u_" << phase
     << (sign > 0 ? " + c_" : " - c_") << phase
     << (exception ? " (hyperbolic closure exception holds)" : "");
  throw ResonanceError(phase, sign, margin, exception, os.str());
}

}  // namespace

EigenStructure eigenstructure(const MixturePrimitive& U, const StiffenedGas& eos1,
                              const StiffenedGas& eos2, double delta_res) {
  require_admissible(U, eos1, eos2);
  const Derived d = derive(U, eos1, eos2);
  const double margin = resonance_margin(U, eos1, eos2);
  if (margin <= delta_res) throw_resonance(U, d, margin);

  EigenStructure es;
  es.lambda = analytic_eigenvalues(U, eos1, eos2);
  es.resonance_margin = margin;

  const double dp_over_rho = (d.p1 - d.p2) / d.rho;
  const double D1 = (d.u1 - d.u) * (d.u1 - d.u) - d.c1 * d.c1;
  const double D2 = (d.u2 - d.u) * (d.u2 - d.u) - d.c2 * d.c2;

  Matrix7 R = Matrix7::Zero();
  // interface wave u
  R(0, 0) = 1.0;
  R(1, 0) = -d.Y2 * d.W / D1 * (dp_over_rho - d.c1 * d.c1 / d.a1);
  R(2, 0) = d.r1 * d.c1 * d.c1 / D1 * (dp_over_rho - d.Y2 * d.Y2 * d.W * d.W / d.a1);
  R(4, 0) = d.Y1 * d.W / D2 * (dp_over_rho + d.c2 * d.c2 / d.a2);
  R(5, 0) = d.r2 * d.c2 * d.c2 / D2 * (dp_over_rho + d.Y1 * d.Y1 * d.W * d.W / d.a2);
  // acoustic and contact waves, phase 1
  R(1, 1) = 1.0;
  R(2, 1) = d.r1 * d.c1;
  R(1, 2) = 1.0;
  R(2, 2) = -d.r1 * d.c1;
  R(3, 3) = 1.0;
  // phase 2
  R(4, 4) = 1.0;
  R(5, 4) = d.r2 * d.c2;
  R(4, 5) = 1.0;
  R(5, 5) = -d.r2 * d.c2;
  R(6, 6) = 1.0;
  es.R = R;

  Eigen::JacobiSVD<Matrix7> svd(R);
  const auto& sv = svd.singularValues();
  es.condition_number = sv(0) / sv(6);
  return es;
}

namespace {

// u as a function of V = (alpha1, u1, p1, m1, u2, p2, m2).
double mixture_velocity_V(const Eigen::Matrix<double, 7, 1>& V) {
  const double m1 = V(3), m2 = V(6);
  return (m1 * V(1) + m2 * V(4)) / (m1 + m2);
}

}  // namespace

FieldClassification classify_fields(const MixturePrimitive& U, const StiffenedGas& eos1,
                                    const StiffenedGas& eos2, double delta_res) {
  const EigenStructure es = eigenstructure(U, eos1, eos2, delta_res);
  const Derived d = derive(U, eos1, eos2);
  const Vector7 V0 = primitive_to_quasilinear(U, eos1, eos2);

  FieldClassification cls;
  // Acoustic and contact eigenvalues by central differences in U variables.
  const auto lambda_at = [&](const Vector7& V, int j) {
    const MixturePrimitive W = quasilinear_to_primitive(V, eos1, eos2);
    return analytic_eigenvalues(W, eos1, eos2)(j);
  };
  for (int j = 1; j < 7; ++j) {
    Vector7 grad = Vector7::Zero();
    for (int i = 0; i < 7; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(V0(i)));
      Vector7 Vp = V0, Vm = V0;
      Vp(i) += h;
      Vm(i) -= h;
      grad(i) = (lambda_at(Vp, j) - lambda_at(Vm, j)) / (2.0 * h);
    }
    cls.grad_lambda_dot_r[j] = grad.dot(es.R.col(j));
  }

  // Interface field in V = (alpha1, u1, p1, m1, u2, p2, m2): the eigenvector is the
  // first column of R with the entropy slots replaced by the m_k components.
  const double dp_over_rho = (d.p1 - d.p2) / d.rho;
  const double D1 = (d.u1 - d.u) * (d.u1 - d.u) - d.c1 * d.c1;
  const double D2 = (d.u2 - d.u) * (d.u2 - d.u) - d.c2 * d.c2;
  Eigen::Matrix<double, 7, 1> rV;
  rV << 1.0, es.R(1, 0), es.R(2, 0),
      d.rho * d.Y1 / D1 * (dp_over_rho - d.c1 * d.c1 / d.a1), es.R(4, 0), es.R(5, 0),
      d.rho * d.Y2 / D2 * (dp_over_rho + d.c2 * d.c2 / d.a2);
  Eigen::Matrix<double, 7, 1> V;
  V << d.a1, d.u1, d.p1, d.m1, d.u2, d.p2, d.m2;
  Eigen::Matrix<double, 7, 1> gradV;
  for (int i = 0; i < 7; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(V(i)));
    auto Vp = V, Vm = V;
    Vp(i) += h;
    Vm(i) -= h;
    gradV(i) = (mixture_velocity_V(Vp) - mixture_velocity_V(Vm)) / (2.0 * h);
  }
  cls.grad_lambda_dot_r[0] = gradV.dot(rV);

  for (int j = 0; j < 7; ++j) {
    cls.nature[j] = std::abs(cls.grad_lambda_dot_r[j]) < 1e-6
                        ? FieldNature::LinearlyDegenerate
                        : FieldNature::GenuinelyNonlinear;
  }
  return cls;
}

Symmetrizer symmetrizer(const MixturePrimitive& U, const StiffenedGas& eos1,
                        const StiffenedGas& eos2, double delta_res) {
  require_admissible(U, eos1, eos2);
  const Derived d = derive(U, eos1, eos2);
  const double margin = resonance_margin(U, eos1, eos2);
  if (margin <= delta_res) throw_resonance(U, d, margin);

  const Matrix7 M = assemble_quasilinear(U, eos1, eos2);
  Symmetrizer sym;
  sym.P = Matrix7::Zero();

  double bound = 0.0;  // |P1^{-1/2} y1|^2 + |P2^{-1/2} y2|^2
  for (int k = 0; k < 2; ++k) {
    const double rk = k == 0 ? d.r1 : d.r2;
    const double ck = k == 0 ? d.c1 : d.c2;
    const double uk = k == 0 ? d.u1 : d.u2;
    const double rc2 = rk * ck * ck;
    // P_k = diag(rho_k^2 c_k^2, 1, 1) makes P_k M_k symmetric.
    const Eigen::Vector3d Pk_diag(rk * rc2, 1.0, 1.0);
    const Eigen::Vector3d zk = M.block<3, 1>(1 + 3 * k, 0);
    // (M_k^T - u I) y = P_k z_k; the last line is trivial and sets y^(3) = 0,
    // leaving the 2x2 system with determinant (u_k - u)^2 - c_k^2.
    const double det = (uk - d.u) * (uk - d.u) - ck * ck;
    const double b0 = Pk_diag(0) * zk(0);
    const double b1 = Pk_diag(1) * zk(1);
    Eigen::Vector3d y;
    y(0) = ((uk - d.u) * b0 - rc2 * b1) / det;
    y(1) = (-(1.0 / rk) * b0 + (uk - d.u) * b1) / det;
    y(2) = 0.0;
    (k == 0 ? sym.y1 : sym.y2) = y;
    bound += y(0) * y(0) / Pk_diag(0) + y(1) * y(1);
    sym.P.block<3, 3>(1 + 3 * k, 1 + 3 * k) = Pk_diag.asDiagonal();
    sym.P.block<3, 1>(1 + 3 * k, 0) = y;
    sym.P.block<1, 3>(0, 1 + 3 * k) = y.transpose();
  }
  // theta_alpha strictly above the Cauchy-Schwarz bound, with margin for conditioning.
  sym.theta_alpha = bound + std::max(1.0, bound);
  sym.P(0, 0) = sym.theta_alpha;
  return sym;
}

}  // namespace twofluid
