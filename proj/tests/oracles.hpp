#ifndef TWOFLUID_TESTS_ORACLES_HPP
#define TWOFLUID_TESTS_ORACLES_HPP

#include <functional>
#include <vector>

namespace oracles {

// Exact solution of the single-phase ideal-gas Riemann problem (Toro's pressure
// iteration). Test-only oracle, independent of the library code.
class ExactEulerRiemann {
public:
  ExactEulerRiemann(double gamma, double rho_l, double u_l, double p_l, double rho_r,
                    double u_r, double p_r);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }

  struct Sample {
    double rho, u, p;
  };
  // Self-similar solution at speed s = x / t.
  Sample sample(double s) const;

private:
  double g_, rl_, ul_, pl_, rr_, ur_, pr_, cl_, cr_;
  double p_star_, u_star_;
};

// Classic fixed-step RK4 for small ODE systems; the stiff-limit oracle uses it
// with step sizes resolving the fastest relaxation scale.
std::vector<double> rk4_integrate(
    const std::function<std::vector<double>(const std::vector<double>&)>& rhs,
    std::vector<double> y, double t0, double t1, int nsteps);

}  // namespace oracles

#endif
