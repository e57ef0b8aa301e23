#ifndef TWOFLUID_SOLVER1D_HPP
#define TWOFLUID_SOLVER1D_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "twofluid/relaxation.hpp"
#include "twofluid/state.hpp"

namespace twofluid {

enum class SchemeKind { RusanovPC };
enum class BoundaryKind { Transmissive, Periodic, Reflective };
enum class LimiterKind { None, Minmod };

struct SolverConfig {
  double cfl = 0.45;  // in (0, 1]
  double t_end = 0.0;
  SchemeKind scheme = SchemeKind::RusanovPC;
  BoundaryKind boundary = BoundaryKind::Transmissive;
  Closure closure = Closure::NewModel;
  LimiterKind limiter = LimiterKind::None;
  int max_dt_retries = 10;
  bool parallel = true;  // OpenMP kernel; the serial reference is kept for testing
};

// Uniform cell-centered grid; 7 conserved components per cell, cell-major.
class Grid1D {
public:
  Grid1D() = default;
  Grid1D(int n, double x_lo, double x_hi);

  int size() const { return n_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  double dx() const { return dx_; }
  double x_center(int i) const { return x_lo_ + (i + 0.5) * dx_; }

  double* cell(int i) { return data_.data() + 7 * i; }
  const double* cell(int i) const { return data_.data() + 7 * i; }

  ConservedState state(int i) const;
  void set_state(int i, const ConservedState& q);

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

private:
  int n_ = 0;
  double x_lo_ = 0.0, x_hi_ = 1.0, dx_ = 0.0;
  std::vector<double> data_;
};

struct StepDiagnostics {
  std::int64_t step = 0;
  double t = 0.0, dt = 0.0;
  double mass1 = 0.0, mass2 = 0.0;
  double momentum = 0.0;  // q1 + q2 summed over cells (times dx)
  double energy = 0.0;    // eps1 + eps2 summed over cells (times dx)
  double entropy = 0.0;   // alpha1 rho1 s1 + alpha2 rho2 s2 summed (times dx)
  double min_resonance_margin = 0.0;
  std::int64_t clip_count = 0;
};

using DiagnosticsSeries = std::vector<StepDiagnostics>;

// Deterministic (fixed-order, compensated) grid totals.
StepDiagnostics grid_totals(const Grid1D& grid, const StiffenedGas& eos1,
                            const StiffenedGas& eos2);

// dt = cfl dx / max over cells of max_k(|u_k| + c_k).
double dt_cfl(const Grid1D& grid, const SolverConfig& cfg, const StiffenedGas& eos1,
              const StiffenedGas& eos2);

// One forward-Euler path-conservative Rusanov step of size dt (dt <= dt_cfl).
// On an inadmissible post-state the step is retried with halved dt (at most
// cfg.max_dt_retries times) and the dt actually taken is returned; clip_count
// accumulates volume-fraction floor hits. Throws InvalidStateError when the
// retries are exhausted.
double step(Grid1D& grid, const SolverConfig& cfg, double dt, const StiffenedGas& eos1,
            const StiffenedGas& eos2, std::int64_t* clip_count = nullptr);

// Straightforward serial implementation kept as the reference for the OpenMP
// kernel; produces bit-identical grids.
double step_reference(Grid1D& grid, const SolverConfig& cfg, double dt,
                      const StiffenedGas& eos1, const StiffenedGas& eos2,
                      std::int64_t* clip_count = nullptr);

// MUSCL/minmod primitive reconstruction; interface i+1/2 takes (left[i], right[i]).
struct ReconstructedInterfaces {
  std::vector<MixturePrimitive> left, right;  // size n+1 with ghost closure
};
ReconstructedInterfaces muscl_reconstruct(const Grid1D& grid, const SolverConfig& cfg,
                                          const StiffenedGas& eos1,
                                          const StiffenedGas& eos2);

struct RunResult {
  std::vector<std::pair<double, Grid1D>> snapshots;  // (time, grid) at requested times
  DiagnosticsSeries diagnostics;
};

using SnapshotCallback =
    std::function<void(double t, const Grid1D& grid)>;

// Advances to cfg.t_end with hyperbolic steps followed by relaxation substeps,
// recording diagnostics every accepted step and snapshots at the requested times
// (always including the initial state). `on_snapshot`, when set, is called in
// addition to storing the snapshot.
RunResult run(const SolverConfig& cfg, Grid1D initial, const RelaxationParams& relax,
              const StiffenedGas& eos1, const StiffenedGas& eos2,
              std::vector<double> output_times,
              const SnapshotCallback& on_snapshot = nullptr);

// Applies relax_cell to every cell (OpenMP across cells).
void split_step(Grid1D& grid, const RelaxationParams& par, double dt, Closure closure,
                const StiffenedGas& eos1, const StiffenedGas& eos2,
                bool parallel = true);

}  // namespace twofluid

#endif
