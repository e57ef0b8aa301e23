#include "twofluid/relaxation.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace twofluid {

namespace {

double pressure_scale(const MixturePrimitive& U, const StiffenedGas& eos1,
                      const StiffenedGas& eos2) {
  return std::max(U.phase1.p + eos1.p_inf(), U.phase2.p + eos2.p_inf());
}

}  // namespace

std::array<double, 7> source_rhs(const MixturePrimitive& U, const RelaxationParams& par,
                                 Closure closure, const StiffenedGas& eos1,
                                 const StiffenedGas& eos2) {
  require_admissible(U, eos1, eos2);
  std::array<double, 7> rhs{};
  double S_mec = 0.0, S_kin = 0.0, S_th = 0.0;
  if (par.pressure.mode == RelaxationMode::FiniteRate)
    S_mec = (U.phase1.p - U.phase2.p) / par.pressure.eps;
  if (par.velocity.mode == RelaxationMode::FiniteRate)
    S_kin = (U.phase2.u - U.phase1.u) / par.velocity.eps;
  if (par.thermal.mode == RelaxationMode::FiniteRate) {
    const double T1 = eos1.temperature(U.phase1.rho, U.phase1.p);
    const double T2 = eos2.temperature(U.phase2.rho, U.phase2.p);
    S_th = (T2 - T1) / par.thermal.eps;
  }
  const double pI = interfacial_pressure(U, closure);
  const double uI = interfacial_velocity(U, closure);
  rhs[0] = S_mec;
  rhs[1] = 0.0;
  rhs[2] = 0.0;
  rhs[3] = +S_kin;
  rhs[4] = -S_kin;
  const double energy_exchange = S_th - pI * S_mec + uI * S_kin;
  rhs[5] = +energy_exchange;
  rhs[6] = -energy_exchange;
  return rhs;
}

double entropy_production_rate(const MixturePrimitive& U, const RelaxationParams& par,
                               const StiffenedGas& eos1, const StiffenedGas& eos2) {
  const auto m = mixture(U);
  const double T1 = eos1.temperature(U.phase1.rho, U.phase1.p);
  const double T2 = eos2.temperature(U.phase2.rho, U.phase2.p);
  double prod = 0.0;
  if (par.thermal.mode == RelaxationMode::FiniteRate) {
    const double S_th = (T2 - T1) / par.thermal.eps;
    prod += (1.0 / T1 - 1.0 / T2) * S_th;
  }
  if (par.velocity.mode == RelaxationMode::FiniteRate) {
    const double du = U.phase2.u - U.phase1.u;
    prod += (m.Y2 / T1 + m.Y1 / T2) * du * du / par.velocity.eps;
  }
  if (par.pressure.mode == RelaxationMode::FiniteRate) {
    const double dp = U.phase1.p - U.phase2.p;
    prod += (m.Y1 / T1 + m.Y2 / T2) * dp * dp / par.pressure.eps;
  }
  return prod;
}

MixturePrimitive relax_velocity_instant(const MixturePrimitive& U,
                                        const StiffenedGas& eos1,
                                        const StiffenedGas& eos2) {
  require_admissible(U, eos1, eos2);
  const auto m = mixture(U);
  MixturePrimitive out = U;
  out.phase1.u = m.u;
  out.phase2.u = m.u;
  // Each phase keeps the kinetic energy lost by its own velocity change.
  const double du1 = U.phase1.u - m.u;
  const double du2 = U.phase2.u - m.u;
  const double e1 = eos1.internal_energy(U.phase1.rho, U.phase1.p) + 0.5 * du1 * du1;
  const double e2 = eos2.internal_energy(U.phase2.rho, U.phase2.p) + 0.5 * du2 * du2;
  out.phase1.p = eos1.pressure(U.phase1.rho, e1);
  out.phase2.p = eos2.pressure(U.phase2.rho, e2);
  return out;
}

namespace {

// State along the frozen-velocity pressure-relaxation path, parametrized by alpha1.
struct PressurePathState {
  double alpha1, e1, e2;
};

struct PressurePath {
  double m1, m2, Y1, Y2;
  const StiffenedGas* eos1;
  const StiffenedGas* eos2;
  Closure closure;

  double p1(const PressurePathState& s) const {
    return eos1->pressure(m1 / s.alpha1, s.e1);
  }
  double p2(const PressurePathState& s) const {
    return eos2->pressure(m2 / (1.0 - s.alpha1), s.e2);
  }
  double pI(const PressurePathState& s) const {
    switch (closure) {
      case Closure::NewModel:
        return Y2 * p1(s) + Y1 * p2(s);
      case Closure::BnOriginal:
        return p2(s);
      case Closure::BnSaurel:
        return s.alpha1 * p1(s) + (1.0 - s.alpha1) * p2(s);
    }
    return 0.0;
  }
  // d(e1, e2)/d alpha1 along the epsilon_p -> 0 trajectory.
  void deriv(const PressurePathState& s, double* de1, double* de2) const {
    const double p = pI(s);
    *de1 = -p / m1;
    *de2 = +p / m2;
  }
  // RK4 march from `s` to alpha1 = target.
  PressurePathState advance(PressurePathState s, double target) const {
    const double span = target - s.alpha1;
    const int nsub = std::max(32, static_cast<int>(std::ceil(std::abs(span) / 0.005)));
    const double h = span / nsub;
    for (int i = 0; i < nsub; ++i) {
      double k1e1, k1e2, k2e1, k2e2, k3e1, k3e2, k4e1, k4e2;
      deriv(s, &k1e1, &k1e2);
      PressurePathState mid{s.alpha1 + 0.5 * h, s.e1 + 0.5 * h * k1e1,
                            s.e2 + 0.5 * h * k1e2};
      deriv(mid, &k2e1, &k2e2);
      mid = {s.alpha1 + 0.5 * h, s.e1 + 0.5 * h * k2e1, s.e2 + 0.5 * h * k2e2};
      deriv(mid, &k3e1, &k3e2);
      PressurePathState end{s.alpha1 + h, s.e1 + h * k3e1, s.e2 + h * k3e2};
      deriv(end, &k4e1, &k4e2);
      s.alpha1 += h;
      s.e1 += h / 6.0 * (k1e1 + 2.0 * k2e1 + 2.0 * k3e1 + k4e1);
      s.e2 += h / 6.0 * (k1e2 + 2.0 * k2e2 + 2.0 * k3e2 + k4e2);
    }
    s.alpha1 = target;
    return s;
  }
  double gap(const PressurePathState& s) const { return p1(s) - p2(s); }
  // d(p1 - p2)/d alpha1 along the path, for the Newton update.
  double gap_slope(const PressurePathState& s) const {
    double de1, de2;
    deriv(s, &de1, &de2);
    const double r1 = m1 / s.alpha1, r2 = m2 / (1.0 - s.alpha1);
    const double dr1 = -m1 / (s.alpha1 * s.alpha1);
    const double dr2 = +m2 / ((1.0 - s.alpha1) * (1.0 - s.alpha1));
    const double dp1 = (eos1->gamma() - 1.0) * ((s.e1 - eos1->q()) * dr1 + r1 * de1);
    const double dp2 = (eos2->gamma() - 1.0) * ((s.e2 - eos2->q()) * dr2 + r2 * de2);
    return dp1 - dp2;
  }
};

}  // namespace

MixturePrimitive relax_pressure_instant(const MixturePrimitive& U,
                                        const StiffenedGas& eos1,
                                        const StiffenedGas& eos2, Closure closure) {
  require_admissible(U, eos1, eos2);
  const double pscale = pressure_scale(U, eos1, eos2);
  const double tol = 1e-12 * pscale;
  if (std::abs(U.phase1.p - U.phase2.p) <= tol) return U;

  const auto m = mixture(U);
  PressurePath path{U.alpha1 * U.phase1.rho,
                    (1.0 - U.alpha1) * U.phase2.rho,
                    m.Y1,
                    m.Y2,
                    &eos1,
                    &eos2,
                    closure};
  const PressurePathState start{U.alpha1,
                                eos1.internal_energy(U.phase1.rho, U.phase1.p),
                                eos2.internal_energy(U.phase2.rho, U.phase2.p)};

  // Bracket the equilibrium: alpha1 moves in the direction of p1 - p2.
  const double g0 = path.gap(start);
  double lo = U.alpha1, hi = g0 > 0.0 ? 1.0 - kAlphaFloor : kAlphaFloor;
  double glo = g0;
  {
    // March toward the bound until the gap changes sign.
    const int nprobe = 40;
    double prev = lo, gprev = glo;
    bool bracketed = false;
    for (int i = 1; i <= nprobe; ++i) {
      const double a = lo + (hi - lo) * static_cast<double>(i) / nprobe;
      double ga;
      try {
        ga = path.gap(path.advance(start, a));
      } catch (const InvalidStateError&) {
        hi = a;  // left the admissible set; equilibrium must be before this point
        break;
      }
      if (ga == 0.0 || (ga > 0.0) != (gprev > 0.0)) {
        lo = prev;
        glo = gprev;
        hi = a;
        bracketed = true;
        break;
      }
      prev = a;
      gprev = ga;
    }
    if (!bracketed) {
      double ghi;
      try {
        ghi = path.gap(path.advance(start, hi));
      } catch (const InvalidStateError&) {
        ghi = glo;  // treat as same-sign; handled below
      }
      if ((ghi > 0.0) == (glo > 0.0)) {
        std::ostringstream os;
        os << "relax_pressure_instant: no pressure equilibrium inside the "
              "volume-fraction bracket [" << kAlphaFloor << ", " << 1.0 - kAlphaFloor
           << "]; residual p1-p2=" << ghi << " at alpha1=" << hi;
        throw NumericalError(os.str());
      }
      lo = prev;
      glo = gprev;
    }
  }

  // Safeguarded Newton on the endpoint volume fraction.
  double a = 0.5 * (lo + hi);
  PressurePathState s = path.advance(start, a);
  double g = path.gap(s);
  for (int it = 0; it < 100 && std::abs(g) > tol; ++it) {
    if ((g > 0.0) == (glo > 0.0)) {
      lo = a;
      glo = g;
    } else {
      hi = a;
    }
    const double slope = path.gap_slope(s);
    double next = a - g / slope;
    const double blo = std::min(lo, hi), bhi = std::max(lo, hi);
    if (!(std::isfinite(next)) || next <= blo || next >= bhi)
      next = 0.5 * (lo + hi);
    a = next;
    s = path.advance(start, a);
    g = path.gap(s);
  }
  if (std::abs(g) > tol) {
    std::ostringstream os;
    os << "relax_pressure_instant: Newton stalled, |p1-p2|=" << std::abs(g)
       << " exceeds tolerance " << tol << " at alpha1=" << a;
    throw NumericalError(os.str());
  }

  MixturePrimitive out = U;
  out.alpha1 = a;
  out.phase1.rho = path.m1 / a;
  out.phase2.rho = path.m2 / (1.0 - a);
  out.phase1.p = eos1.pressure(out.phase1.rho, s.e1);
  out.phase2.p = eos2.pressure(out.phase2.rho, s.e2);
  return out;
}

namespace {

// Coupled backward-Euler solve of the finite-rate channels. Velocities decouple
// into a linear 2x2 system; the remaining unknowns reduce to (alpha1', X) with X
// the phase-antisymmetric energy exchange, so conservation is exact by construction.
ConservedState backward_euler_cell(const ConservedState& Q, const RelaxationParams& par,
                                   double dt, Closure closure, const StiffenedGas& eos1,
                                   const StiffenedGas& eos2, int depth) {
  const double m1 = Q.m1, m2 = Q.m2;
  double u1 = Q.q1 / m1, u2 = Q.q2 / m2;
  double dq1 = 0.0;
  if (par.velocity.mode == RelaxationMode::FiniteRate) {
    const double k = dt / par.velocity.eps;
    const double det = m1 * m2 + k * (m1 + m2);
    const double u1n = ((m2 + k) * m1 * u1 + k * m2 * u2) / det;
    const double u2n = (k * m1 * u1 + (m1 + k) * m2 * u2) / det;
    dq1 = m1 * (u1n - u1);
    u1 = u1n;
    u2 = u2n;
  }

  const bool p_rate = par.pressure.mode == RelaxationMode::FiniteRate;
  const bool t_rate = par.thermal.mode == RelaxationMode::FiniteRate;
  const double eps1_kin = Q.eps1, eps2_kin = Q.eps2;

  // Residuals of (alpha1', X): F1 = alpha' - alpha - dt S_mec', F2 = X - X(state').
  const auto eval = [&](double a, double X, double* F1,
                        double* F2) -> bool {
    const double r1 = m1 / a, r2 = m2 / (1.0 - a);
    const double e1 = (eps1_kin + X) / m1 - 0.5 * u1 * u1;
    const double e2 = (eps2_kin - X) / m2 - 0.5 * u2 * u2;
    double p1, p2;
    try {
      p1 = eos1.pressure(r1, e1);
      p2 = eos2.pressure(r2, e2);
    } catch (const InvalidStateError&) {
      return false;
    }
    MixturePrimitive prim;
    prim.alpha1 = a;
    prim.phase1 = {r1, u1, p1};
    prim.phase2 = {r2, u2, p2};
    const double S_mec = p_rate ? (p1 - p2) / par.pressure.eps : 0.0;
    double S_th = 0.0;
    if (t_rate) {
      S_th = (eos2.temperature(r2, p2) - eos1.temperature(r1, p1)) / par.thermal.eps;
    }
    const double pI = interfacial_pressure(prim, closure);
    const double uI = interfacial_velocity(prim, closure);
    *F1 = a - Q.alpha1 - dt * S_mec;
    *F2 = X - (dt * S_th - dt * pI * S_mec + uI * dq1);
    return true;
  };

  double a = Q.alpha1, X = 0.0;
  bool converged = false;
  const double escale = std::abs(Q.eps1) + std::abs(Q.eps2) + 1e-30;
  const double atol = 1e-13;
  const double xtol = 1e-13 * escale;
  for (int it = 0; it < 60; ++it) {
    double F1, F2;
    if (!eval(a, X, &F1, &F2)) break;
    if (std::abs(F1) < atol && std::abs(F2) < xtol) {
      converged = true;
      break;
    }
    const double ha = 1e-8 * (1.0 + std::abs(a));
    const double hx = 1e-8 * (std::abs(X) + 1e-6 * (std::abs(Q.eps1) + std::abs(Q.eps2)));
    double F1a, F2a, F1x, F2x;
    if (!eval(std::min(a + ha, 1.0 - kAlphaFloor), X, &F1a, &F2a) ||
        !eval(a, X + hx, &F1x, &F2x))
      break;
    const double J11 = (F1a - F1) / ha, J21 = (F2a - F2) / ha;
    const double J12 = (F1x - F1) / hx, J22 = (F2x - F2) / hx;
    const double det = J11 * J22 - J12 * J21;
    if (det == 0.0 || !std::isfinite(det)) break;
    double da = -(F1 * J22 - F2 * J12) / det;
    double dX = -(J11 * F2 - J21 * F1) / det;
    // Damp into the admissible volume-fraction range.
    double scale = 1.0;
    while (scale > 1e-4 &&
           (a + scale * da <= kAlphaFloor || a + scale * da >= 1.0 - kAlphaFloor)) {
      scale *= 0.5;
    }
    a += scale * da;
    X += scale * dX;
  }
  if (!converged) {
    double F1, F2;
    if (eval(a, X, &F1, &F2) && std::abs(F1) < 1e-10 && std::abs(F2) < 1e-9 * escale) {
      converged = true;  // stagnated but within a loose tolerance
    }
  }
  if (!converged) {
    if (depth >= 10) {
      std::ostringstream os;
      os << "relaxation backward-Euler solve failed to converge (alpha1=" << Q.alpha1
         << ", dt=" << dt << ")";
      throw NumericalError(os.str());
    }
    // Halve the substep; backward Euler remains L-stable under composition.
    ConservedState half =
        backward_euler_cell(Q, par, 0.5 * dt, closure, eos1, eos2, depth + 1);
    return backward_euler_cell(half, par, 0.5 * dt, closure, eos1, eos2, depth + 1);
  }

  ConservedState out = Q;
  out.alpha1 = a;
  out.q1 = Q.q1 + dq1;
  out.q2 = Q.q2 - dq1;
  out.eps1 = Q.eps1 + X;
  out.eps2 = Q.eps2 - X;
  return out;
}

}  // namespace

ConservedState relax_cell(const ConservedState& Q, const RelaxationParams& par,
                          double dt, Closure closure, const StiffenedGas& eos1,
                          const StiffenedGas& eos2) {
  if (!par.any_active()) return Q;
  ConservedState q = Q;
  if (par.any_finite_rate()) {
    q = backward_euler_cell(q, par, dt, closure, eos1, eos2, 0);
  }
  const bool vel_inst = par.velocity.mode == RelaxationMode::Instantaneous;
  const bool pre_inst = par.pressure.mode == RelaxationMode::Instantaneous;
  if (vel_inst || pre_inst) {
    MixturePrimitive prim = cons_to_prim(q, eos1, eos2);
    if (vel_inst) prim = relax_velocity_instant(prim, eos1, eos2);
    if (pre_inst) prim = relax_pressure_instant(prim, eos1, eos2, closure);
    const double alpha1 = prim.alpha1;
    // Rebuild conserved values keeping the masses bit-exact.
    ConservedState qn;
    qn.alpha1 = alpha1;
    qn.m1 = q.m1;
    qn.m2 = q.m2;
    qn.q1 = q.m1 * prim.phase1.u;
    qn.q2 = q.m2 * prim.phase2.u;
    qn.eps1 = q.m1 * (eos1.internal_energy(prim.phase1.rho, prim.phase1.p) +
                      0.5 * prim.phase1.u * prim.phase1.u);
    qn.eps2 = q.m2 * (eos2.internal_energy(prim.phase2.rho, prim.phase2.p) +
                      0.5 * prim.phase2.u * prim.phase2.u);
    q = qn;
  }
  return q;
}

}  // namespace twofluid
