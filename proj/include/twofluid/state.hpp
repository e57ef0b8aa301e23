#ifndef TWOFLUID_STATE_HPP
#define TWOFLUID_STATE_HPP

#include "twofluid/eos.hpp"

namespace twofluid {

// Volume-fraction floor; states are clipped to [kAlphaFloor, 1 - kAlphaFloor]
// and clipping is counted in the solver diagnostics, never silent.
inline constexpr double kAlphaFloor = 1e-9;

struct PhaseState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

// Full primitive state (alpha1, rho_k, u_k, p_k); entropies, energies and sound
// speeds are derived through the EOS on demand.
struct MixturePrimitive {
  double alpha1 = 0.5;
  PhaseState phase1, phase2;

  double alpha(int k) const { return k == 1 ? alpha1 : 1.0 - alpha1; }
  const PhaseState& phase(int k) const { return k == 1 ? phase1 : phase2; }
  PhaseState& phase(int k) { return k == 1 ? phase1 : phase2; }
};

// Conserved vector (alpha1, m1, m2, q1, q2, eps1, eps2) with m_k = alpha_k rho_k,
// q_k = m_k u_k, eps_k = m_k E_k; alpha1 is carried as the non-conservative component.
struct ConservedState {
  double alpha1 = 0.5;
  double m1 = 0.5, m2 = 0.5;
  double q1 = 0.0, q2 = 0.0;
  double eps1 = 1.0, eps2 = 1.0;
};

struct MixtureQuantities {
  double rho;  // alpha1 rho1 + alpha2 rho2
  double Y1, Y2;
  double u;  // mass-weighted velocity Y1 u1 + Y2 u2
  double W;  // relative velocity u1 - u2
};

// Interfacial closure set. Each tag fully determines (u_I, p_I, (pu)_I).
enum class Closure {
  NewModel,    // u_I = u, p_I = Y2 p1 + Y1 p2, (pu)_I = Y1 p2 u1 + Y2 p1 u2
  BnOriginal,  // u_I = u1, p_I = p2, (pu)_I = p2 u1
  BnSaurel,    // u_I = u, p_I = alpha1 p1 + alpha2 p2, (pu)_I = p_I u_I
};

MixtureQuantities mixture(const MixturePrimitive& U);

double interfacial_velocity(const MixturePrimitive& U, Closure c);
double interfacial_pressure(const MixturePrimitive& U, Closure c);
double interfacial_work(const MixturePrimitive& U, Closure c);

ConservedState prim_to_cons(const MixturePrimitive& U,
                            const StiffenedGas& eos1, const StiffenedGas& eos2);
MixturePrimitive cons_to_prim(const ConservedState& Q,
                              const StiffenedGas& eos1, const StiffenedGas& eos2);

double total_entropy_density(const MixturePrimitive& U,
                             const StiffenedGas& eos1, const StiffenedGas& eos2);
// alpha1 rho1 s1 u1 + alpha2 rho2 s2 u2
double entropy_flux(const MixturePrimitive& U,
                    const StiffenedGas& eos1, const StiffenedGas& eos2);
// Equivalent (u, W) split form: rho s u + rho Y1 Y2 (s1 - s2) W.
double entropy_flux_mixture_form(const MixturePrimitive& U,
                                 const StiffenedGas& eos1, const StiffenedGas& eos2);

// Clips alpha1 into [kAlphaFloor, 1 - kAlphaFloor]; returns true when clipping occurred.
bool clip_alpha(double& alpha1);

bool admissible(const MixturePrimitive& U,
                const StiffenedGas& eos1, const StiffenedGas& eos2);
void require_admissible(const MixturePrimitive& U,
                        const StiffenedGas& eos1, const StiffenedGas& eos2);

}  // namespace twofluid

#endif
