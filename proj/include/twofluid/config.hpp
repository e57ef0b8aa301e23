#ifndef TWOFLUID_CONFIG_HPP
#define TWOFLUID_CONFIG_HPP

#include <string>
#include <vector>

#include "twofluid/solver1d.hpp"
#include "twofluid/waves.hpp"

namespace twofluid {

enum class InitialKind { RiemannPair, AlphaBump };

struct InitialCondition {
  InitialKind kind = InitialKind::RiemannPair;
  // Riemann pair
  double x_split = 0.5;
  MixturePrimitive left, right;
  // Smooth profile: alpha1(x) = base + amp exp(-((x - center)/width)^2) over a
  // uniform two-phase background.
  double alpha_base = 0.5, alpha_amp = 0.2, center = 0.5, width = 0.1;
  PhaseState bg1, bg2;
};

struct OutputConfig {
  std::vector<double> times;
  std::string directory = ".";
};

struct Scenario {
  EosParams phase1, phase2;
  int n_cells = 100;
  double x_lo = 0.0, x_hi = 1.0;
  InitialCondition initial;
  SolverConfig solver;
  RelaxationParams relaxation;
  OutputConfig output;
};

// INI-style scenario text -> validated Scenario. Unknown sections/keys, missing
// required keys, out-of-range values and unknown enum tags are hard errors with
// section/key/line in the message.
Scenario parse_config(const std::string& text);
Scenario load_scenario(const std::string& path);

// Single-state spec for `eigen`: [phase1] [phase2] [state].
struct StateSpec {
  EosParams phase1, phase2;
  MixturePrimitive state;
};
StateSpec parse_state_spec(const std::string& text);

// Two-state spec for `riemann`: [phase1] [phase2] [state.left] [state.right] [riemann].
struct RiemannSpec {
  EosParams phase1, phase2;
  MixturePrimitive left, right;
  WaveId wave = WaveId::InterfaceU;
  int phase = 1;          // shocked phase for the jump-condition check
  bool has_sigma = false; // sigma inferred from the mass-flux relation when absent
  double sigma = 0.0;
};
RiemannSpec parse_riemann_spec(const std::string& text);

Grid1D build_initial_grid(const Scenario& sc, const StiffenedGas& eos1,
                          const StiffenedGas& eos2);

}  // namespace twofluid

#endif
