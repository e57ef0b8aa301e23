#ifndef TWOFLUID_WAVES_HPP
#define TWOFLUID_WAVES_HPP

#include <array>

#include "twofluid/state.hpp"

namespace twofluid {

// The seven waves, bijective with the eigenvalue slots
// (u, u1+c1, u1-c1, u1, u2+c2, u2-c2, u2).
enum class WaveId {
  InterfaceU,
  Contact1,
  Acoustic1Plus,
  Acoustic1Minus,
  Contact2,
  Acoustic2Plus,
  Acoustic2Minus,
};

// Column/slot of the wave in the eigenstructure ordering.
int eigen_index(WaveId w);
// Phase the wave belongs to (0 for the interface wave).
int wave_phase(WaveId w);
bool is_acoustic(WaveId w);

// The 6 Riemann invariants of the wave, in the fixed order below.
//   InterfaceU:       u, rho Y1 Y2 W, a1 p1 + a2 p2 + rho Y1 Y2 W^2,
//                     h1 - h2 + (Y2 - Y1) W^2 / 2, s1, s2
//   Contact_k:        alpha1, u_k, p_k, u_k', p_k', rho_k'
//   Acoustic_k_plus:  alpha1, s_k, u_k - f_k(s_k, p_k), u_k', p_k', rho_k'
//   Acoustic_k_minus: alpha1, s_k, u_k + f_k(s_k, p_k), u_k', p_k', rho_k'
std::array<double, 6> riemann_invariants(WaveId w, const MixturePrimitive& U,
                                         const StiffenedGas& eos1,
                                         const StiffenedGas& eos2);

// Two states tentatively connected through a single-phase shock of speed sigma.
// Jump conditions require alpha1 identical left/right and the non-shocked phase
// uniform across the discontinuity.
struct ShockCandidate {
  MixturePrimitive left, right;
  double sigma = 0.0;
  int phase = 1;
};

struct RhResidual {
  double alpha_jump = 0.0;             // [alpha1], must vanish
  std::array<double, 2> mass{};        // [alpha_k rho_k (u_k - sigma)]
  std::array<double, 2> momentum{};    // [alpha_k rho_k u_k (u_k - sigma)] + [alpha_k p_k]
  std::array<double, 2> energy{};      // [alpha_k rho_k E_k (u_k - sigma)] + [alpha_k p_k u_k]
  double max_abs() const;
};

// Residuals normalized by the larger of the left/right bracket magnitudes
// (floored at 1e-30). Throws PreconditionError when alpha1 jumps.
RhResidual rankine_hugoniot_residual(const ShockCandidate& c,
                                     const StiffenedGas& eos1,
                                     const StiffenedGas& eos2);

// Hugoniot curve point parametrized by the post-shock pressure of `phase`.
// The post-state velocity depends on the acoustic family, so both branches are
// returned: sigma_plus pairs with right_plus (u_k + c_k family, sigma -> u_k + c_k
// at zero strength) and sigma_minus with right_minus.
struct HugoniotPoint {
  MixturePrimitive right_plus;
  double sigma_plus;
  MixturePrimitive right_minus;
  double sigma_minus;
};

HugoniotPoint hugoniot_state(const MixturePrimitive& left, int phase, double p_right,
                             const StiffenedGas& eos1, const StiffenedGas& eos2);

struct Admissibility {
  bool admissible;            // entropy production >= -1e-12 * scale
  double entropy_production;  // [m_k s_k (u_k - sigma)] across the discontinuity
  bool lax_ok;                // lambda(U_R) < sigma < lambda(U_L) for the acoustic family
};

// Requires the candidate to satisfy the jump conditions to rh_tol first.
Admissibility admissible(const ShockCandidate& c,
                         const StiffenedGas& eos1, const StiffenedGas& eos2,
                         double rh_tol = 1e-8);

// Isentrope of the chosen acoustic wave through `left`, parametrized by pressure;
// alpha1 and the other phase are unchanged.
MixturePrimitive rarefaction_curve(const MixturePrimitive& left, WaveId acoustic_wave,
                                   double p, const StiffenedGas& eos1,
                                   const StiffenedGas& eos2);

}  // namespace twofluid

#endif
