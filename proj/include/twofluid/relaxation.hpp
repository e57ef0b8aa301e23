#ifndef TWOFLUID_RELAXATION_HPP
#define TWOFLUID_RELAXATION_HPP

#include <array>
#include <limits>

#include "twofluid/state.hpp"

namespace twofluid {

enum class RelaxationMode { Off, FiniteRate, Instantaneous };

struct RelaxationChannel {
  RelaxationMode mode = RelaxationMode::Off;
  double eps = std::numeric_limits<double>::infinity();
};

// Mechanical (pressure), kinematic (velocity) and thermal relaxation settings.
// Thermal relaxation is finite-rate only.
struct RelaxationParams {
  RelaxationChannel pressure, velocity, thermal;

  bool any_active() const {
    return pressure.mode != RelaxationMode::Off ||
           velocity.mode != RelaxationMode::Off ||
           thermal.mode != RelaxationMode::Off;
  }
  bool any_finite_rate() const {
    return pressure.mode == RelaxationMode::FiniteRate ||
           velocity.mode == RelaxationMode::FiniteRate ||
           thermal.mode == RelaxationMode::FiniteRate;
  }
};

// Right-hand side of the relaxation system in conserved components
// (alpha1, m1, m2, q1, q2, eps1, eps2):
//   d alpha1 = S_mec,  d m_k = 0,  d q_1 = +S_kin,  d q_2 = -S_kin,
//   d eps_1 = +S_th - p_I S_mec + u_I S_kin,  d eps_2 = the exact negative,
// with S_mec = (p1 - p2)/eps_p, S_kin = (u2 - u1)/eps_u, S_th = (T2 - T1)/eps_T.
// Channels that are Off or Instantaneous contribute nothing here.
std::array<double, 7> source_rhs(const MixturePrimitive& U, const RelaxationParams& par,
                                 Closure closure, const StiffenedGas& eos1,
                                 const StiffenedGas& eos2);

// Entropy production rate of the sources:
//   (1/T1 - 1/T2) S_th + (Y2/T1 + Y1/T2) (u2 - u1) S_kin + (Y1/T1 + Y2/T2) (p1 - p2) S_mec.
// Non-negative for positive relaxation parameters.
double entropy_production_rate(const MixturePrimitive& U, const RelaxationParams& par,
                               const StiffenedGas& eos1, const StiffenedGas& eos2);

// Instantaneous velocity equilibrium: u1' = u2' = u. Total momentum is conserved by
// construction and each phase absorbs the kinetic energy lost by its own velocity
// change, d(m_k e_k) = m_k (u_k - u)^2 / 2, which is the eps_u -> 0 limit of the
// finite-rate system with u_I = u.
MixturePrimitive relax_velocity_instant(const MixturePrimitive& U,
                                        const StiffenedGas& eos1,
                                        const StiffenedGas& eos2);

// Instantaneous pressure equilibrium: the stationary point of the finite-rate path
//   d(m_k e_k)/d alpha1 = -(+/-) p_I, frozen velocities and masses,
// located by a safeguarded Newton iteration on alpha1 (bracket [kAlphaFloor,
// 1 - kAlphaFloor], tolerance 1e-12 on p1 - p2 relative to the pressure scale).
MixturePrimitive relax_pressure_instant(const MixturePrimitive& U,
                                        const StiffenedGas& eos1,
                                        const StiffenedGas& eos2,
                                        Closure closure = Closure::NewModel);

// One pointwise relaxation substep: finite-rate channels through one backward-Euler
// (L-stable) solve, then the instantaneous projections. Masses are exactly constant;
// total momentum and energy are conserved to round-off.
ConservedState relax_cell(const ConservedState& Q, const RelaxationParams& par,
                          double dt, Closure closure, const StiffenedGas& eos1,
                          const StiffenedGas& eos2);

}  // namespace twofluid

#endif
