#ifndef TWOFLUID_EOS_HPP
#define TWOFLUID_EOS_HPP

#include "twofluid/errors.hpp"

namespace twofluid {

// Stiffened-gas parameters. The ideal gas is the p_inf = 0, q = 0 special case.
struct EosParams {
  double gamma = 1.4;  // ratio of specific heats, > 1
  double p_inf = 0.0;  // reference pressure offset, >= 0
  double cv = 1.0;     // specific heat at constant volume, > 0
  double q = 0.0;      // energy offset
};

/**
 * Complete stiffened-gas equation of state,
 *   e(rho, p) = (p + gamma p_inf) / (rho (gamma - 1)) + q,
 *   s(rho, p) = cv ln((p + p_inf) / rho^gamma).
 * Admissible states satisfy rho > 0 and p + p_inf > 0.
 */
class StiffenedGas {
public:
  StiffenedGas() : StiffenedGas(EosParams{}) {}
  explicit StiffenedGas(const EosParams& par);

  double gamma() const { return gamma_; }
  double p_inf() const { return p_inf_; }
  double cv() const { return cv_; }
  double q() const { return q_; }
  const EosParams& params() const { return par_; }

  double internal_energy(double rho, double p) const;
  double pressure(double rho, double e) const;
  double sound_speed(double rho, double p) const;
  double entropy(double rho, double p) const;
  double temperature(double rho, double p) const;
  double enthalpy(double rho, double p) const;

  // G = 1 + (rho/2) (d2p/drho2)_s / (dp/drho)_s; state-independent (gamma+1)/2 here.
  double fundamental_derivative(double rho, double p) const;

  // Density on the isentrope, inverse of entropy at fixed p.
  double density_from_entropy_pressure(double s, double p) const;

  // f(s, p) = int^p dp' / (rho c), the acoustic Riemann-invariant velocity scale.
  // Closed form 2 c / (gamma - 1) with the integration constant fixed so that
  // f -> 0 as p + p_inf -> 0+.
  double riemann_function(double s, double p) const;

  // Same integral by adaptive composite Gauss quadrature (absolute tolerance 1e-10),
  // the fallback path for an EOS without a closed form.
  double riemann_function_quadrature(double s, double p) const;

  bool admissible(double rho, double p) const {
    return rho > 0.0 && p + p_inf_ > 0.0;
  }
  void require_admissible(double rho, double p) const;

private:
  EosParams par_;
  double gamma_, p_inf_, cv_, q_;
};

}  // namespace twofluid

#endif
