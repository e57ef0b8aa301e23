#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "twofluid/eos.hpp"

using namespace twofluid;

namespace {

// p on the isentrope through (rho0, s) at density rho, by bisection on the
// implementation's entropy (no closed-form inversion).
double pressure_on_isentrope(const StiffenedGas& eos, double s, double rho) {
  double lo = -eos.p_inf() + 1e-14 * (1.0 + eos.p_inf());
  double hi = 1.0;
  while (eos.entropy(rho, hi) < s) hi = 2.0 * hi + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (eos.entropy(rho, mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// e(tau) at fixed entropy, for the tau-derivative definition of the fundamental
// derivative.
double energy_of_tau(const StiffenedGas& eos, double s, double tau) {
  const double rho = 1.0 / tau;
  const double p = pressure_on_isentrope(eos, s, rho);
  return eos.internal_energy(rho, p);
}

}  // namespace

TEST_CASE("eos parameter validation") {
  CHECK_THROWS_AS(StiffenedGas({0.9, 0.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(StiffenedGas({1.4, 0.0, -1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(StiffenedGas({1.4, -2.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("internal energy closed forms") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  CHECK(air.internal_energy(1.0, 1.0) == doctest::Approx(2.5).epsilon(1e-14));

  const StiffenedGas water({4.4, 6e8, 1.0, 0.0});
  const double e = water.internal_energy(1000.0, 1e5);
  CHECK(e == doctest::Approx((1e5 + 4.4 * 6e8) / (1000.0 * 3.4)).epsilon(1e-14));
  CHECK(water.pressure(1000.0, e) == doctest::Approx(1e5).epsilon(1e-11));

  CHECK_THROWS_AS(air.internal_energy(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(air.internal_energy(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(water.pressure(1000.0, -1e9), InvalidStateError);
}

TEST_CASE("pressure inverse and linearity") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  CHECK(air.pressure(1.0, 2.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(air.pressure(2.0, 2.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("pressure <-> internal_energy round trip on random states") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ur(0.1, 5.0), up(0.2, 9.0);
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{2.8, 1.7, 0.6, 0.3}}) {
    const StiffenedGas eos(par);
    for (int i = 0; i < 100; ++i) {
      const double rho = ur(rng), p = up(rng);
      const double back = eos.pressure(rho, eos.internal_energy(rho, p));
      CHECK(std::abs(back - p) <= 1e-14 * (std::abs(p) + par.p_inf));
    }
  }
}

TEST_CASE("sound speed against isentropic finite differences") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  CHECK(air.sound_speed(1.0, 1.0) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

  const StiffenedGas g2({2.0, 0.0, 1.0, 0.0});
  CHECK(g2.sound_speed(1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));

  // c^2 = dp/drho at fixed s = -(ds/drho)_p / (ds/dp)_rho
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ur(0.3, 3.0), up(0.5, 5.0);
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{1.9, 0.8, 1.4, -0.1}}) {
    const StiffenedGas eos(par);
    for (int i = 0; i < 100; ++i) {
      const double rho = ur(rng), p = up(rng);
      const double hr = 1e-6 * rho, hp = 1e-6 * (p + par.p_inf);
      const double ds_drho =
          (eos.entropy(rho + hr, p) - eos.entropy(rho - hr, p)) / (2.0 * hr);
      const double ds_dp =
          (eos.entropy(rho, p + hp) - eos.entropy(rho, p - hp)) / (2.0 * hp);
      const double c2_fd = -ds_drho / ds_dp;
      const double c2 = std::pow(eos.sound_speed(rho, p), 2);
      CHECK(std::abs(c2_fd - c2) <= 1e-6 * c2);
    }
  }
  // the specific example value to 1e-8
  {
    const double rho = 1.0, p = 1.0, h = 1e-6;
    const double ds_drho = (air.entropy(rho + h, p) - air.entropy(rho - h, p)) / (2 * h);
    const double ds_dp = (air.entropy(rho, p + h) - air.entropy(rho, p - h)) / (2 * h);
    CHECK(std::sqrt(-ds_drho / ds_dp) ==
          doctest::Approx(1.1832159566).epsilon(1e-8));
  }
}

TEST_CASE("Gibbs identity by finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.3, 3.0), up(0.5, 5.0), ud(-1.0, 1.0);
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{2.4, 1.2, 0.8, 0.2}}) {
    const StiffenedGas eos(par);
    for (int i = 0; i < 100; ++i) {
      const double rho = ur(rng), p = up(rng);
      double drho = ud(rng), dp = ud(rng);
      if (std::abs(drho) + std::abs(dp) < 0.1) drho = 1.0;
      const double h = 1e-6;
      const auto at = [&](double sgn) {
        return std::array<double, 3>{rho + sgn * h * drho, p + sgn * h * dp, 0.0};
      };
      const auto [rp, pp, _p] = at(+1.0);
      const auto [rm, pm, _m] = at(-1.0);
      const double ds = (eos.entropy(rp, pp) - eos.entropy(rm, pm)) / (2 * h);
      const double de =
          (eos.internal_energy(rp, pp) - eos.internal_energy(rm, pm)) / (2 * h);
      const double dtau = (1.0 / rp - 1.0 / rm) / (2 * h);
      const double T = eos.temperature(rho, p);
      const double resid = T * ds - de - p * dtau;
      CHECK(std::abs(resid) <= 1e-6 * (std::abs(de) + std::abs(p * dtau) + 1e-12));
    }
  }
}

TEST_CASE("temperature closed form and positivity") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  CHECK(air.temperature(1.0, 1.0) == doctest::Approx(2.5).epsilon(1e-14));
  const StiffenedGas sg({2.0, 3.0, 2.5, 0.4});
  CHECK(sg.temperature(2.0, 1.0) > 0.0);
}

TEST_CASE("entropy only depends on p/rho^gamma for the ideal gas") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  const double s0 = air.entropy(1.0, 1.0);
  for (const double k : {0.3, 2.0, 7.5}) {
    CHECK(air.entropy(std::pow(k, 1.0 / 1.4), k) == doctest::Approx(s0).epsilon(1e-13));
  }
  // monotone in p at fixed rho
  CHECK(air.entropy(1.0, 2.0) > air.entropy(1.0, 1.0));
}

TEST_CASE("entropy concavity in (tau, e)") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ur(0.4, 2.5), up(0.6, 4.0);
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{2.1, 0.9, 1.1, 0.1}}) {
    const StiffenedGas eos(par);
    const auto s_of = [&](double tau, double e) {
      return eos.entropy(1.0 / tau, eos.pressure(1.0 / tau, e));
    };
    for (int i = 0; i < 50; ++i) {
      const double rho = ur(rng), p = up(rng);
      const double tau = 1.0 / rho, e = eos.internal_energy(rho, p);
      const double ht = 1e-5 * tau, he = 1e-5 * std::abs(e);
      const double s00 = s_of(tau, e);
      const double stt =
          (s_of(tau + ht, e) - 2 * s00 + s_of(tau - ht, e)) / (ht * ht);
      const double see = (s_of(tau, e + he) - 2 * s00 + s_of(tau, e - he)) / (he * he);
      const double ste = (s_of(tau + ht, e + he) - s_of(tau + ht, e - he) -
                          s_of(tau - ht, e + he) + s_of(tau - ht, e - he)) /
                         (4 * ht * he);
      // Hessian of s negative semidefinite
      CHECK(stt <= 1e-7);
      CHECK(see <= 1e-7);
      CHECK(stt * see - ste * ste >= -1e-7 * (std::abs(stt * see) + 1.0));
    }
  }
}

TEST_CASE("enthalpy definition and differential identity") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  CHECK(air.enthalpy(1.0, 1.0) == doctest::Approx(3.5).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.3, 3.0), up(0.5, 5.0), ud(-1.0, 1.0);
  const StiffenedGas eos({1.7, 0.6, 1.2, 0.15});
  for (int i = 0; i < 100; ++i) {
    const double rho = ur(rng), p = up(rng);
    const double e = eos.internal_energy(rho, p);
    CHECK(eos.enthalpy(rho, p) - e == doctest::Approx(p / rho).epsilon(1e-13));

    // dh = T ds + dp / rho
    const double drho = ud(rng), dp = 1.0;
    const double h = 1e-6;
    const double dh = (eos.enthalpy(rho + h * drho, p + h * dp) -
                       eos.enthalpy(rho - h * drho, p - h * dp)) /
                      (2 * h);
    const double ds = (eos.entropy(rho + h * drho, p + h * dp) -
                       eos.entropy(rho - h * drho, p - h * dp)) /
                      (2 * h);
    const double resid = dh - eos.temperature(rho, p) * ds - dp / rho;
    CHECK(std::abs(resid) <= 1e-6 * (std::abs(dh) + 1.0));
  }
}

TEST_CASE("fundamental derivative matches the tau-derivative definition") {
  // G = -(tau/2) (d3e/dtau3)_s / (d2e/dtau2)_s, high-order central stencils
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{3.0, 0.0, 1.0, 0.0},
        EosParams{2.2, 1.4, 0.9, 0.1}}) {
    const StiffenedGas eos(par);
    const double rho = 1.3, p = 2.1;
    const double s = eos.entropy(rho, p);
    const double tau = 1.0 / rho;
    const double h = 0.015 * tau;
    double f[7];
    for (int k = -3; k <= 3; ++k) f[k + 3] = energy_of_tau(eos, s, tau + k * h);
    const double d2 =
        (-f[1] + 16 * f[2] - 30 * f[3] + 16 * f[4] - f[5]) / (12 * h * h);
    const double d3 = (f[0] - 8 * f[1] + 13 * f[2] - 13 * f[4] + 8 * f[5] - f[6]) /
                      (8 * h * h * h);
    const double G_fd = -0.5 * tau * d3 / d2;
    CHECK(eos.fundamental_derivative(rho, p) ==
          doctest::Approx(0.5 * (par.gamma + 1.0)).epsilon(1e-14));
    CHECK(std::abs(G_fd - eos.fundamental_derivative(rho, p)) <= 1e-5);
  }
  // G > 0 for every admissible stiffened gas: (gamma + 1)/2 > 1
  CHECK(StiffenedGas({1.01, 0.0, 1.0, 0.0}).fundamental_derivative(1.0, 1.0) > 1.0);
}

TEST_CASE("riemann function closed form, quadrature fallback, derivative") {
  const StiffenedGas air({1.4, 0.0, 1.0, 0.0});
  {
    // state with c = 1: p = rho c^2 / gamma
    const double rho = 1.4, p = 1.0;
    CHECK(air.sound_speed(rho, p) == doctest::Approx(1.0).epsilon(1e-14));
    const double s = air.entropy(rho, p);
    CHECK(air.riemann_function(s, p) == doctest::Approx(5.0).epsilon(1e-13));
  }

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ur(0.4, 2.5), up(0.6, 4.0);
  for (const EosParams par :
       {EosParams{1.4, 0.0, 1.0, 0.0}, EosParams{2.6, 1.1, 0.8, -0.05}}) {
    const StiffenedGas eos(par);
    for (int i = 0; i < 10; ++i) {
      const double rho = ur(rng), p = up(rng);
      const double s = eos.entropy(rho, p);
      const double exact = eos.riemann_function(s, p);
      CHECK(std::abs(eos.riemann_function_quadrature(s, p) - exact) <= 1e-8 * exact);

      // df/dp = 1/(rho c) on the isentrope
      const double h = 1e-6 * (p + par.p_inf);
      const double df =
          (eos.riemann_function(s, p + h) - eos.riemann_function(s, p - h)) / (2 * h);
      CHECK(std::abs(df - 1.0 / (rho * eos.sound_speed(rho, p))) <=
            1e-6 * std::abs(df));

      // monotone increasing in p at fixed s
      CHECK(eos.riemann_function(s, p * 1.1) > exact);
    }
  }
}

TEST_CASE("density from entropy and pressure inverts entropy") {
  const StiffenedGas eos({1.9, 0.7, 1.3, 0.2});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(0.4, 2.5), up(0.6, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double rho = ur(rng), p = up(rng);
    const double s = eos.entropy(rho, p);
    CHECK(eos.density_from_entropy_pressure(s, p) ==
          doctest::Approx(rho).epsilon(1e-13));
  }
}
