#ifndef TWOFLUID_TESTS_HELPERS_HPP
#define TWOFLUID_TESTS_HELPERS_HPP

#include <array>
#include <random>

#include "twofluid/eigenstructure.hpp"
#include "twofluid/state.hpp"

namespace tfh {

using namespace twofluid;

inline StiffenedGas ideal_gas(double gamma, double cv = 1.0) {
  return StiffenedGas({gamma, 0.0, cv, 0.0});
}

// A stiffened/ideal pair with offsets and heat capacities that exercise every
// EOS parameter.
struct EosPair {
  StiffenedGas eos1{EosParams{1.6, 0.4, 1.3, 0.05}};
  StiffenedGas eos2{EosParams{2.2, 0.1, 0.7, -0.02}};
};

inline MixturePrimitive random_state(std::mt19937_64& rng, const StiffenedGas& eos1,
                                     const StiffenedGas& eos2,
                                     double min_margin = 0.0) {
  std::uniform_real_distribution<double> ua(0.05, 0.95), ur(0.3, 3.0), up(0.6, 4.0),
      uu(-0.5, 0.5);
  for (;;) {
    MixturePrimitive U;
    U.alpha1 = ua(rng);
    U.phase1 = {ur(rng), uu(rng), up(rng)};
    U.phase2 = {ur(rng), uu(rng), up(rng)};
    if (!admissible(U, eos1, eos2)) continue;
    if (min_margin <= 0.0 || resonance_margin(U, eos1, eos2) > min_margin) return U;
  }
}

// Central difference of a scalar function of the quasilinear vector.
template <typename F>
Vector7 fd_gradient7(const F& f, const Vector7& V0, double rel_step = 1e-6) {
  Vector7 g;
  for (int i = 0; i < 7; ++i) {
    const double h = rel_step * (1.0 + std::abs(V0(i)));
    Vector7 Vp = V0, Vm = V0;
    Vp(i) += h;
    Vm(i) -= h;
    g(i) = (f(Vp) - f(Vm)) / (2.0 * h);
  }
  return g;
}

}  // namespace tfh

#endif
