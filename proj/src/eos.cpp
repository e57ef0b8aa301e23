#include "twofluid/eos.hpp"

#include <cmath>
#include <sstream>

namespace twofluid {

namespace {

std::string bad_state_msg(const char* fn, double rho, double p, double p_inf) {
  std::ostringstream os;
  os << fn << ": inadmissible state rho=" << rho << " p=" << p
     << " (p + p_inf=" << p + p_inf << ")";
  return os.str();
}

}  // namespace

StiffenedGas::StiffenedGas(const EosParams& par)
    : par_(par), gamma_(par.gamma), p_inf_(par.p_inf), cv_(par.cv), q_(par.q) {
  if (!(gamma_ > 1.0)) throw DomainError("EosParams: gamma must exceed 1");
  if (!(cv_ > 0.0)) throw DomainError("EosParams: cv must be positive");
  if (!(p_inf_ >= 0.0)) throw DomainError("EosParams: p_inf must be non-negative");
  if (!std::isfinite(q_)) throw DomainError("EosParams: q must be finite");
}

void StiffenedGas::require_admissible(double rho, double p) const {
  if (!(rho > 0.0)) throw DomainError(bad_state_msg("eos", rho, p, p_inf_));
  if (!(p + p_inf_ > 0.0)) throw DomainError(bad_state_msg("eos", rho, p, p_inf_));
}

double StiffenedGas::internal_energy(double rho, double p) const {
  require_admissible(rho, p);
  return (p + gamma_ * p_inf_) / (rho * (gamma_ - 1.0)) + q_;
}

double StiffenedGas::pressure(double rho, double e) const {
  if (!(rho > 0.0)) throw DomainError(bad_state_msg("pressure", rho, 0.0, p_inf_));
  const double p = (gamma_ - 1.0) * rho * (e - q_) - gamma_ * p_inf_;
  if (!(p + p_inf_ > 0.0))
    throw InvalidStateError(bad_state_msg("pressure", rho, p, p_inf_));
  return p;
}

double StiffenedGas::sound_speed(double rho, double p) const {
  require_admissible(rho, p);
  return std::sqrt(gamma_ * (p + p_inf_) / rho);
}

double StiffenedGas::entropy(double rho, double p) const {
  require_admissible(rho, p);
  return cv_ * std::log((p + p_inf_) / std::pow(rho, gamma_));
}

double StiffenedGas::temperature(double rho, double p) const {
  require_admissible(rho, p);
  return (p + p_inf_) / ((gamma_ - 1.0) * cv_ * rho);
}

double StiffenedGas::enthalpy(double rho, double p) const {
  return internal_energy(rho, p) + p / rho;
}

double StiffenedGas::fundamental_derivative(double rho, double p) const {
  require_admissible(rho, p);
  return 0.5 * (gamma_ + 1.0);
}

double StiffenedGas::density_from_entropy_pressure(double s, double p) const {
  if (!(p + p_inf_ > 0.0))
    throw DomainError(bad_state_msg("density_from_entropy_pressure", 0.0, p, p_inf_));
  return std::pow((p + p_inf_) * std::exp(-s / cv_), 1.0 / gamma_);
}

double StiffenedGas::riemann_function(double s, double p) const {
  const double rho = density_from_entropy_pressure(s, p);
  return 2.0 * sound_speed(rho, p) / (gamma_ - 1.0);
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGaussHalf = 8;
constexpr double kGaussX[kGaussHalf] = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
constexpr double kGaussW[kGaussHalf] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

template <typename F>
double gauss15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = kGaussW[0] * f(mid);
  for (int i = 1; i < kGaussHalf; ++i) {
    const double dx = half * kGaussX[i];
    acc += kGaussW[i] * (f(mid + dx) + f(mid - dx));
  }
  return acc * half;
}

// Adaptive bisection on Gauss panels. The integrand has an integrable power-law
// singularity at the lower endpoint, so the recursion is allowed deep there; a
// machine-precision floor on the error estimate and a depth cap make it terminate,
// at which point the truncation left in the singular sliver is negligible.
template <typename F>
double adaptive_gauss(const F& f, double a, double b, double tol, int depth,
                      long& evals) {
  const double whole = gauss15(f, a, b);
  const double m = 0.5 * (a + b);
  const double left = gauss15(f, a, m);
  const double right = gauss15(f, m, b);
  evals += 45;
  if (evals > 2000000)
    throw NumericalError(
        "riemann_function_quadrature: evaluation budget exhausted near the "
        "isentrope endpoint");
  const double sum = left + right;
  const double err = std::abs(sum - whole);
  if (err <= tol || err <= 64.0 * 2.2e-16 * std::abs(sum) || depth >= 600 ||
      !(m > a && m < b)) {
    return sum;
  }
  return adaptive_gauss(f, a, m, 0.5 * tol, depth + 1, evals) +
         adaptive_gauss(f, m, b, 0.5 * tol, depth + 1, evals);
}

}  // namespace

double StiffenedGas::riemann_function_quadrature(double s, double p) const {
  if (!(p + p_inf_ > 0.0))
    throw DomainError(bad_state_msg("riemann_function_quadrature", 0.0, p, p_inf_));
  // Reparametrize by pi = p' + p_inf: on the isentrope the integrand depends on p'
  // only through pi, which the equivalent zero-offset EOS evaluates without the
  // catastrophic cancellation of p' + p_inf near the lower endpoint.
  EosParams shifted = par_;
  shifted.p_inf = 0.0;
  const StiffenedGas unshifted(shifted);
  const auto integrand = [&](double pi) {
    const double rho = unshifted.density_from_entropy_pressure(s, pi);
    return 1.0 / (rho * unshifted.sound_speed(rho, pi));
  };
  long evals = 0;
  const double result = adaptive_gauss(integrand, 0.0, p + p_inf_, 1e-10, 0, evals);
  if (!std::isfinite(result))
    throw NumericalError("riemann_function_quadrature: quadrature did not converge");
  return result;
}

}  // namespace twofluid
