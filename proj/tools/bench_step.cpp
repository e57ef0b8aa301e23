// Throughput comparison of the OpenMP step kernel against the serial reference.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "twofluid/solver1d.hpp"

using namespace twofluid;

namespace {

Grid1D make_grid(int n, const StiffenedGas& eos1, const StiffenedGas& eos2) {
  Grid1D grid(n, 0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x_center(i);
    MixturePrimitive U;
    U.alpha1 = 0.5 + 0.3 * std::sin(6.2831853 * x);
    U.phase1 = {1.0 + 0.2 * std::cos(6.2831853 * x), 0.1, 1.5};
    U.phase2 = {1.3, -0.1, 1.2 + 0.1 * std::sin(12.566371 * x)};
    grid.set_state(i, prim_to_cons(U, eos1, eos2));
  }
  return grid;
}

double time_steps(Grid1D grid, const SolverConfig& cfg, int steps,
                  const StiffenedGas& eos1, const StiffenedGas& eos2, bool reference) {
  const double dt = 0.5 * dt_cfl(grid, cfg, eos1, eos2);
  const auto start = std::chrono::steady_clock::now();
  for (int s = 0; s < steps; ++s) {
    if (reference)
      step_reference(grid, cfg, dt, eos1, eos2);
    else
      step(grid, cfg, dt, eos1, eos2);
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 100000;
  const int steps = argc > 2 ? std::atoi(argv[2]) : 50;
  const StiffenedGas eos1({1.4, 0.0, 1.0, 0.0});
  const StiffenedGas eos2({2.1, 0.5, 0.9, 0.0});
  SolverConfig cfg;
  cfg.boundary = BoundaryKind::Periodic;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("cells=%d steps=%d threads=%d\n", n, steps, threads);

  Grid1D grid = make_grid(n, eos1, eos2);
  const double t_ser = time_steps(grid, cfg, steps, eos1, eos2, true);
  const double t_par = time_steps(grid, cfg, steps, eos1, eos2, false);

  const double cell_steps = static_cast<double>(n) * steps;
  std::printf("serial reference : %8.3f s  (%8.2f Mcell-steps/s)\n", t_ser,
              cell_steps / t_ser / 1e6);
  std::printf("openmp kernel    : %8.3f s  (%8.2f Mcell-steps/s)\n", t_par,
              cell_steps / t_par / 1e6);
  std::printf("speedup          : %8.2fx\n", t_ser / t_par);
  return 0;
}
