#include "twofluid/waves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twofluid {

int eigen_index(WaveId w) {
  switch (w) {
    case WaveId::InterfaceU: return 0;
    case WaveId::Acoustic1Plus: return 1;
    case WaveId::Acoustic1Minus: return 2;
    case WaveId::Contact1: return 3;
    case WaveId::Acoustic2Plus: return 4;
    case WaveId::Acoustic2Minus: return 5;
    case WaveId::Contact2: return 6;
  }
  return 0;
}

int wave_phase(WaveId w) {
  switch (w) {
    case WaveId::InterfaceU: return 0;
    case WaveId::Contact1:
    case WaveId::Acoustic1Plus:
    case WaveId::Acoustic1Minus: return 1;
    default: return 2;
  }
}

bool is_acoustic(WaveId w) {
  return w == WaveId::Acoustic1Plus || w == WaveId::Acoustic1Minus ||
         w == WaveId::Acoustic2Plus || w == WaveId::Acoustic2Minus;
}

std::array<double, 6> riemann_invariants(WaveId w, const MixturePrimitive& U,
                                         const StiffenedGas& eos1,
                                         const StiffenedGas& eos2) {
  require_admissible(U, eos1, eos2);
  const auto m = mixture(U);
  const double u1 = U.phase1.u, u2 = U.phase2.u;
  const double p1 = U.phase1.p, p2 = U.phase2.p;
  const double r1 = U.phase1.rho, r2 = U.phase2.rho;
  switch (w) {
    case WaveId::InterfaceU: {
      const double s1 = eos1.entropy(r1, p1);
      const double s2 = eos2.entropy(r2, p2);
      const double h1 = eos1.enthalpy(r1, p1);
      const double h2 = eos2.enthalpy(r2, p2);
      return {m.u,
              m.rho * m.Y1 * m.Y2 * m.W,
              U.alpha1 * p1 + (1.0 - U.alpha1) * p2 + m.rho * m.Y1 * m.Y2 * m.W * m.W,
              h1 - h2 + 0.5 * (m.Y2 - m.Y1) * m.W * m.W,
              s1,
              s2};
    }
    case WaveId::Contact1:
      return {U.alpha1, u1, p1, u2, p2, r2};
    case WaveId::Contact2:
      return {U.alpha1, u2, p2, u1, p1, r1};
    case WaveId::Acoustic1Plus:
    case WaveId::Acoustic1Minus: {
      const double s1 = eos1.entropy(r1, p1);
      const double f1 = eos1.riemann_function(s1, p1);
      const double arg = w == WaveId::Acoustic1Plus ? u1 - f1 : u1 + f1;
      return {U.alpha1, s1, arg, u2, p2, r2};
    }
    case WaveId::Acoustic2Plus:
    case WaveId::Acoustic2Minus: {
      const double s2 = eos2.entropy(r2, p2);
      const double f2 = eos2.riemann_function(s2, p2);
      const double arg = w == WaveId::Acoustic2Plus ? u2 - f2 : u2 + f2;
      return {U.alpha1, s2, arg, u1, p1, r1};
    }
  }
  return {};
}

double RhResidual::max_abs() const {
  double m = std::abs(alpha_jump);
  for (int k = 0; k < 2; ++k) {
    m = std::max(m, std::abs(mass[k]));
    m = std::max(m, std::abs(momentum[k]));
    m = std::max(m, std::abs(energy[k]));
  }
  return m;
}

namespace {

constexpr double kScaleFloor = 1e-30;

struct SideTerms {
  double mass, momentum_flux, pressure_term, energy_flux, work_term;
};

SideTerms side_terms(const MixturePrimitive& U, int k, double sigma,
                     const StiffenedGas& eos) {
  const double a = U.alpha(k);
  const PhaseState& ph = U.phase(k);
  const double m = a * ph.rho;
  const double E = eos.internal_energy(ph.rho, ph.p) + 0.5 * ph.u * ph.u;
  SideTerms t;
  t.mass = m * (ph.u - sigma);
  t.momentum_flux = m * ph.u * (ph.u - sigma);
  t.pressure_term = a * ph.p;
  t.energy_flux = m * E * (ph.u - sigma);
  t.work_term = a * ph.p * ph.u;
  return t;
}

}  // namespace

RhResidual rankine_hugoniot_residual(const ShockCandidate& c, const StiffenedGas& eos1,
                                     const StiffenedGas& eos2) {
  if (std::abs(c.left.alpha1 - c.right.alpha1) >
      1e-14 * std::max(1.0, std::abs(c.left.alpha1))) {
    std::ostringstream os;
    os << "rankine_hugoniot_residual: alpha1 jumps (" << c.left.alpha1 << " -> "
       << c.right.alpha1
       << "); jump conditions are defined only across the genuinely non-linear "
          "waves, where the non-conservative products are inactive";
    throw PreconditionError(os.str());
  }
  RhResidual r;
  r.alpha_jump = c.right.alpha1 - c.left.alpha1;
  for (int k = 1; k <= 2; ++k) {
    const StiffenedGas& eos = k == 1 ? eos1 : eos2;
    const SideTerms L = side_terms(c.left, k, c.sigma, eos);
    const SideTerms R = side_terms(c.right, k, c.sigma, eos);
    const double mass_scale =
        std::max(std::abs(L.mass), std::abs(R.mass)) + kScaleFloor;
    const double mom_scale =
        std::max(std::abs(L.momentum_flux) + std::abs(L.pressure_term),
                 std::abs(R.momentum_flux) + std::abs(R.pressure_term)) +
        kScaleFloor;
    const double en_scale = std::max(std::abs(L.energy_flux) + std::abs(L.work_term),
                                     std::abs(R.energy_flux) + std::abs(R.work_term)) +
                            kScaleFloor;
    r.mass[k - 1] = (R.mass - L.mass) / mass_scale;
    r.momentum[k - 1] =
        ((R.momentum_flux - L.momentum_flux) + (R.pressure_term - L.pressure_term)) /
        mom_scale;
    r.energy[k - 1] =
        ((R.energy_flux - L.energy_flux) + (R.work_term - L.work_term)) / en_scale;
  }
  return r;
}

HugoniotPoint hugoniot_state(const MixturePrimitive& left, int phase, double p_right,
                             const StiffenedGas& eos1, const StiffenedGas& eos2) {
  require_admissible(left, eos1, eos2);
  const StiffenedGas& eos = phase == 1 ? eos1 : eos2;
  const PhaseState& ph = left.phase(phase);
  const double g = eos.gamma();
  const double piL = ph.p + eos.p_inf();
  const double piR = p_right + eos.p_inf();
  if (!(piR > 0.0)) {
    std::ostringstream os;
    os << "hugoniot_state: post-shock pressure " << p_right
       << " below the -p_inf admissibility bound";
    throw DomainError(os.str());
  }
  // Stiffened-gas Hugoniot in pi = p + p_inf:
  //   tau_R / tau_L = ((g+1) pi_L + (g-1) pi_R) / ((g+1) pi_R + (g-1) pi_L).
  const double tauL = 1.0 / ph.rho;
  const double tau_ratio =
      ((g + 1.0) * piL + (g - 1.0) * piR) / ((g + 1.0) * piR + (g - 1.0) * piL);
  const double tauR = tauL * tau_ratio;
  const double rhoR = 1.0 / tauR;
  // Mass flux magnitude; the acoustic limit p_right -> p gives Jm -> rho c.
  double Jm;
  if (std::abs(piR - piL) <= 1e-14 * (piL + piR)) {
    Jm = ph.rho * eos.sound_speed(ph.rho, ph.p);
  } else {
    Jm = std::sqrt((p_right - ph.p) / (tauL - tauR));
  }
  if (!std::isfinite(Jm))
    throw InvalidStateError("hugoniot_state: mass flux not finite (wrong branch?)");

  HugoniotPoint out;
  out.right_plus = left;
  out.right_minus = left;
  PhaseState plus = ph, minus = ph;
  plus.rho = minus.rho = rhoR;
  plus.p = minus.p = p_right;
  // j = rho (u - sigma): j = -Jm for the u+c family, +Jm for the u-c family.
  out.sigma_plus = ph.u + Jm * tauL;
  plus.u = out.sigma_plus - Jm * tauR;
  out.sigma_minus = ph.u - Jm * tauL;
  minus.u = out.sigma_minus + Jm * tauR;
  out.right_plus.phase(phase) = plus;
  out.right_minus.phase(phase) = minus;
  require_admissible(out.right_plus, eos1, eos2);
  return out;
}

Admissibility admissible(const ShockCandidate& c, const StiffenedGas& eos1,
                         const StiffenedGas& eos2, double rh_tol) {
  const RhResidual res = rankine_hugoniot_residual(c, eos1, eos2);
  if (res.max_abs() > rh_tol) {
    std::ostringstream os;
    os << "admissible: candidate violates the jump conditions (max residual "
       << res.max_abs() << " > " << rh_tol << ")";
    throw PreconditionError(os.str());
  }
  Admissibility adm;
  // Entropy production [m_k s_k (u_k - sigma)] summed over phases; the non-shocked
  // phase contributes zero.
  double production = 0.0;
  double scale = kScaleFloor;
  for (int k = 1; k <= 2; ++k) {
    const StiffenedGas& eos = k == 1 ? eos1 : eos2;
    const auto term = [&](const MixturePrimitive& U) {
      const PhaseState& ph = U.phase(k);
      return U.alpha(k) * ph.rho * eos.entropy(ph.rho, ph.p) * (ph.u - c.sigma);
    };
    const double tl = term(c.left), tr = term(c.right);
    production += tr - tl;
    scale += std::max(std::abs(tl), std::abs(tr));
  }
  adm.entropy_production = production;
  adm.admissible = production >= -1e-12 * scale;

  // Lax check for the relevant acoustic family of the shocked phase.
  const StiffenedGas& eos = c.phase == 1 ? eos1 : eos2;
  const PhaseState& phL = c.left.phase(c.phase);
  const PhaseState& phR = c.right.phase(c.phase);
  const double cL = eos.sound_speed(phL.rho, phL.p);
  const double cR = eos.sound_speed(phR.rho, phR.p);
  const double tol = 1e-12 * std::max(cL, cR);
  const bool lax_plus =
      phR.u + cR <= c.sigma + tol && c.sigma <= phL.u + cL + tol;
  const bool lax_minus =
      phR.u - cR <= c.sigma + tol && c.sigma <= phL.u - cL + tol;
  adm.lax_ok = lax_plus || lax_minus;
  return adm;
}

MixturePrimitive rarefaction_curve(const MixturePrimitive& left, WaveId acoustic_wave,
                                   double p, const StiffenedGas& eos1,
                                   const StiffenedGas& eos2) {
  if (!is_acoustic(acoustic_wave))
    throw PreconditionError("rarefaction_curve: wave must be acoustic");
  require_admissible(left, eos1, eos2);
  const int phase = wave_phase(acoustic_wave);
  const StiffenedGas& eos = phase == 1 ? eos1 : eos2;
  const PhaseState& ph = left.phase(phase);
  if (!(p + eos.p_inf() > 0.0)) {
    std::ostringstream os;
    os << "rarefaction_curve: pressure " << p << " outside the isentrope domain";
    throw DomainError(os.str());
  }
  const double s = eos.entropy(ph.rho, ph.p);
  const double fL = eos.riemann_function(s, ph.p);
  const double f = eos.riemann_function(s, p);
  MixturePrimitive out = left;
  PhaseState& po = out.phase(phase);
  po.rho = eos.density_from_entropy_pressure(s, p);
  po.p = p;
  const bool plus_family = acoustic_wave == WaveId::Acoustic1Plus ||
                           acoustic_wave == WaveId::Acoustic2Plus;
  // u - f is constant through the plus family, u + f through the minus family.
  po.u = plus_family ? ph.u + (f - fL) : ph.u - (f - fL);
  return out;
}

}  // namespace twofluid
