#include "twofluid/state.hpp"

#include <cmath>
#include <sstream>

namespace twofluid {

MixtureQuantities mixture(const MixturePrimitive& U) {
  MixtureQuantities m;
  const double m1 = U.alpha1 * U.phase1.rho;
  const double m2 = (1.0 - U.alpha1) * U.phase2.rho;
  m.rho = m1 + m2;
  m.Y1 = m1 / m.rho;
  m.Y2 = m2 / m.rho;
  m.u = m.Y1 * U.phase1.u + m.Y2 * U.phase2.u;
  m.W = U.phase1.u - U.phase2.u;
  return m;
}

double interfacial_velocity(const MixturePrimitive& U, Closure c) {
  switch (c) {
    case Closure::BnOriginal:
      return U.phase1.u;
    case Closure::NewModel:
    case Closure::BnSaurel:
      return mixture(U).u;
  }
  return mixture(U).u;
}

double interfacial_pressure(const MixturePrimitive& U, Closure c) {
  switch (c) {
    case Closure::NewModel: {
      const auto m = mixture(U);
      return m.Y2 * U.phase1.p + m.Y1 * U.phase2.p;
    }
    case Closure::BnOriginal:
      return U.phase2.p;
    case Closure::BnSaurel:
      return U.alpha1 * U.phase1.p + (1.0 - U.alpha1) * U.phase2.p;
  }
  return 0.0;
}

double interfacial_work(const MixturePrimitive& U, Closure c) {
  switch (c) {
    case Closure::NewModel: {
      const auto m = mixture(U);
      return m.Y1 * U.phase2.p * U.phase1.u + m.Y2 * U.phase1.p * U.phase2.u;
    }
    case Closure::BnOriginal:
      return U.phase2.p * U.phase1.u;
    case Closure::BnSaurel:
      return interfacial_pressure(U, c) * interfacial_velocity(U, c);
  }
  return 0.0;
}

ConservedState prim_to_cons(const MixturePrimitive& U, const StiffenedGas& eos1,
                            const StiffenedGas& eos2) {
  require_admissible(U, eos1, eos2);
  ConservedState q;
  q.alpha1 = U.alpha1;
  q.m1 = U.alpha1 * U.phase1.rho;
  q.m2 = (1.0 - U.alpha1) * U.phase2.rho;
  q.q1 = q.m1 * U.phase1.u;
  q.q2 = q.m2 * U.phase2.u;
  const double E1 =
      eos1.internal_energy(U.phase1.rho, U.phase1.p) + 0.5 * U.phase1.u * U.phase1.u;
  const double E2 =
      eos2.internal_energy(U.phase2.rho, U.phase2.p) + 0.5 * U.phase2.u * U.phase2.u;
  q.eps1 = q.m1 * E1;
  q.eps2 = q.m2 * E2;
  return q;
}

MixturePrimitive cons_to_prim(const ConservedState& Q, const StiffenedGas& eos1,
                              const StiffenedGas& eos2) {
  if (!(Q.alpha1 > 0.0 && Q.alpha1 < 1.0)) {
    std::ostringstream os;
    os << "cons_to_prim: alpha1=" << Q.alpha1 << " outside (0,1)";
    throw InvalidStateError(os.str());
  }
  if (!(Q.m1 > 0.0 && Q.m2 > 0.0)) {
    std::ostringstream os;
    os << "cons_to_prim: non-positive partial mass m1=" << Q.m1 << " m2=" << Q.m2;
    throw InvalidStateError(os.str());
  }
  MixturePrimitive U;
  U.alpha1 = Q.alpha1;
  U.phase1.rho = Q.m1 / Q.alpha1;
  U.phase2.rho = Q.m2 / (1.0 - Q.alpha1);
  U.phase1.u = Q.q1 / Q.m1;
  U.phase2.u = Q.q2 / Q.m2;
  const double e1 = Q.eps1 / Q.m1 - 0.5 * U.phase1.u * U.phase1.u;
  const double e2 = Q.eps2 / Q.m2 - 0.5 * U.phase2.u * U.phase2.u;
  try {
    U.phase1.p = eos1.pressure(U.phase1.rho, e1);
    U.phase2.p = eos2.pressure(U.phase2.rho, e2);
  } catch (const InvalidStateError&) {
    std::ostringstream os;
    os << "cons_to_prim: recovered internal energy inadmissible (alpha1=" << Q.alpha1
       << " m1=" << Q.m1 << " m2=" << Q.m2 << " e1=" << e1 << " e2=" << e2 << ")";
    throw InvalidStateError(os.str());
  }
  return U;
}

double total_entropy_density(const MixturePrimitive& U, const StiffenedGas& eos1,
                             const StiffenedGas& eos2) {
  const double m1 = U.alpha1 * U.phase1.rho;
  const double m2 = (1.0 - U.alpha1) * U.phase2.rho;
  return m1 * eos1.entropy(U.phase1.rho, U.phase1.p) +
         m2 * eos2.entropy(U.phase2.rho, U.phase2.p);
}

double entropy_flux(const MixturePrimitive& U, const StiffenedGas& eos1,
                    const StiffenedGas& eos2) {
  const double m1 = U.alpha1 * U.phase1.rho;
  const double m2 = (1.0 - U.alpha1) * U.phase2.rho;
  return m1 * eos1.entropy(U.phase1.rho, U.phase1.p) * U.phase1.u +
         m2 * eos2.entropy(U.phase2.rho, U.phase2.p) * U.phase2.u;
}

double entropy_flux_mixture_form(const MixturePrimitive& U, const StiffenedGas& eos1,
                                 const StiffenedGas& eos2) {
  const auto m = mixture(U);
  const double s1 = eos1.entropy(U.phase1.rho, U.phase1.p);
  const double s2 = eos2.entropy(U.phase2.rho, U.phase2.p);
  const double rho_s = m.rho * (m.Y1 * s1 + m.Y2 * s2);
  return rho_s * m.u + m.rho * m.Y1 * m.Y2 * (s1 - s2) * m.W;
}

bool clip_alpha(double& alpha1) {
  if (alpha1 < kAlphaFloor) {
    alpha1 = kAlphaFloor;
    return true;
  }
  if (alpha1 > 1.0 - kAlphaFloor) {
    alpha1 = 1.0 - kAlphaFloor;
    return true;
  }
  return false;
}

bool admissible(const MixturePrimitive& U, const StiffenedGas& eos1,
                const StiffenedGas& eos2) {
  return U.alpha1 > 0.0 && U.alpha1 < 1.0 &&
         eos1.admissible(U.phase1.rho, U.phase1.p) &&
         eos2.admissible(U.phase2.rho, U.phase2.p);
}

void require_admissible(const MixturePrimitive& U, const StiffenedGas& eos1,
                        const StiffenedGas& eos2) {
  if (!admissible(U, eos1, eos2)) {
    std::ostringstream os;
    os << "inadmissible state: alpha1=" << U.alpha1 << " rho1=" << U.phase1.rho
       << " p1=" << U.phase1.p << " rho2=" << U.phase2.rho << " p2=" << U.phase2.p;
    throw DomainError(os.str());
  }
}

}  // namespace twofluid
