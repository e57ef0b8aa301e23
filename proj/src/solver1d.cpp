#include "twofluid/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twofluid {

namespace {

// Component layout inside a cell.
enum : int { kA = 0, kM1, kM2, kQ1, kQ2, kE1, kE2 };

struct CellPrims {
  double alpha1;
  double r1, u1, p1, c1;
  double r2, u2, p2, c2;
  double pI, puI, uI;
  double amax;  // max_k(|u_k| + c_k)
  bool ok;
};

CellPrims compute_prims(const double* q, Closure closure, const StiffenedGas& eos1,
                        const StiffenedGas& eos2) {
  CellPrims c{};
  c.alpha1 = q[kA];
  c.ok = q[kA] > 0.0 && q[kA] < 1.0 && q[kM1] > 0.0 && q[kM2] > 0.0;
  if (!c.ok) return c;
  c.r1 = q[kM1] / q[kA];
  c.r2 = q[kM2] / (1.0 - q[kA]);
  c.u1 = q[kQ1] / q[kM1];
  c.u2 = q[kQ2] / q[kM2];
  const double e1 = q[kE1] / q[kM1] - 0.5 * c.u1 * c.u1;
  const double e2 = q[kE2] / q[kM2] - 0.5 * c.u2 * c.u2;
  const double g1 = eos1.gamma(), g2 = eos2.gamma();
  c.p1 = (g1 - 1.0) * c.r1 * (e1 - eos1.q()) - g1 * eos1.p_inf();
  c.p2 = (g2 - 1.0) * c.r2 * (e2 - eos2.q()) - g2 * eos2.p_inf();
  if (!(c.p1 + eos1.p_inf() > 0.0) || !(c.p2 + eos2.p_inf() > 0.0)) {
    c.ok = false;
    return c;
  }
  c.c1 = std::sqrt(g1 * (c.p1 + eos1.p_inf()) / c.r1);
  c.c2 = std::sqrt(g2 * (c.p2 + eos2.p_inf()) / c.r2);
  const double Y1 = q[kM1] / (q[kM1] + q[kM2]);
  const double Y2 = q[kM2] / (q[kM1] + q[kM2]);
  const double umix = Y1 * c.u1 + Y2 * c.u2;
  switch (closure) {
    case Closure::NewModel:
      c.uI = umix;
      c.pI = Y2 * c.p1 + Y1 * c.p2;
      c.puI = Y1 * c.p2 * c.u1 + Y2 * c.p1 * c.u2;
      break;
    case Closure::BnOriginal:
      c.uI = c.u1;
      c.pI = c.p2;
      c.puI = c.p2 * c.u1;
      break;
    case Closure::BnSaurel:
      c.uI = umix;
      c.pI = q[kA] * c.p1 + (1.0 - q[kA]) * c.p2;
      c.puI = c.pI * c.uI;
      break;
  }
  c.amax = std::max(std::abs(c.u1) + c.c1, std::abs(c.u2) + c.c2);
  return c;
}

void physical_flux(const double* q, const CellPrims& c, double* F) {
  F[0] = q[kM1] * c.u1;                    // m1
  F[1] = q[kM2] * c.u2;                    // m2
  F[2] = q[kQ1] * c.u1 + c.alpha1 * c.p1;  // q1
  F[3] = q[kQ2] * c.u2 + (1.0 - c.alpha1) * c.p2;
  F[4] = (q[kE1] + c.alpha1 * c.p1) * c.u1;  // eps1
  F[5] = (q[kE2] + (1.0 - c.alpha1) * c.p2) * c.u2;
}

struct InterfaceTerms {
  double flux[6];       // Rusanov flux for (m1, m2, q1, q2, eps1, eps2)
  double pI_dalpha;     // mean p_I* times (alpha_R - alpha_L)
  double puI_dalpha;    // mean (pu)_I* times dalpha
  double alpha_minus;   // alpha fluctuation assigned to the left cell
  double alpha_plus;    // alpha fluctuation assigned to the right cell
};

// Path-conservative Rusanov interface: conservative flux with local speed
// a = max over the two cells of max_k(|u_k| + c_k); the non-conservative products
// use arithmetic-mean closure values times dalpha, split half/half to the two sides;
// alpha is upwinded on the mean interface velocity (its Rusanov dissipation uses the
// interface speed only).
InterfaceTerms interface_terms(const double* qL, const double* qR, const CellPrims& L,
                               const CellPrims& R) {
  InterfaceTerms t;
  double FL[6], FR[6];
  physical_flux(qL, L, FL);
  physical_flux(qR, R, FR);
  const double a = std::max(L.amax, R.amax);
  for (int c = 0; c < 6; ++c) {
    t.flux[c] = 0.5 * (FL[c] + FR[c]) - 0.5 * a * (qR[1 + c] - qL[1 + c]);
  }
  const double dalpha = qR[kA] - qL[kA];
  t.pI_dalpha = 0.5 * (L.pI + R.pI) * dalpha;
  t.puI_dalpha = 0.5 * (L.puI + R.puI) * dalpha;
  const double ustar = 0.5 * (L.uI + R.uI);
  t.alpha_minus = 0.5 * (ustar - std::abs(ustar)) * dalpha;
  t.alpha_plus = 0.5 * (ustar + std::abs(ustar)) * dalpha;
  return t;
}

// Forward-Euler update of one cell from its two interface terms. The same pI*dalpha
// (resp. (pu)_I*dalpha) value enters the two phasic updates with opposite signs, so
// the phase sum cancels exactly in floating point.
void apply_update(const double* q, const InterfaceTerms& lft, const InterfaceTerms& rgt,
                  double nu, double* out) {
  out[kA] = q[kA] - nu * (lft.alpha_plus + rgt.alpha_minus);
  out[kM1] = q[kM1] - nu * (rgt.flux[0] - lft.flux[0]);
  out[kM2] = q[kM2] - nu * (rgt.flux[1] - lft.flux[1]);
  const double xm = 0.5 * nu * (lft.pI_dalpha + rgt.pI_dalpha);
  out[kQ1] = q[kQ1] - nu * (rgt.flux[2] - lft.flux[2]) + xm;
  out[kQ2] = q[kQ2] - nu * (rgt.flux[3] - lft.flux[3]) - xm;
  const double xe = 0.5 * nu * (lft.puI_dalpha + rgt.puI_dalpha);
  out[kE1] = q[kE1] - nu * (rgt.flux[4] - lft.flux[4]) + xe;
  out[kE2] = q[kE2] - nu * (rgt.flux[5] - lft.flux[5]) - xe;
}

bool candidate_ok(const double* q, const StiffenedGas& eos1, const StiffenedGas& eos2) {
  if (!(q[kM1] > 0.0 && q[kM2] > 0.0)) return false;
  double a = q[kA];
  if (a < kAlphaFloor) a = kAlphaFloor;
  if (a > 1.0 - kAlphaFloor) a = 1.0 - kAlphaFloor;
  const double u1 = q[kQ1] / q[kM1], u2 = q[kQ2] / q[kM2];
  const double e1 = q[kE1] / q[kM1] - 0.5 * u1 * u1;
  const double e2 = q[kE2] / q[kM2] - 0.5 * u2 * u2;
  const double r1 = q[kM1] / a, r2 = q[kM2] / (1.0 - a);
  const double p1 = (eos1.gamma() - 1.0) * r1 * (e1 - eos1.q()) - eos1.gamma() * eos1.p_inf();
  const double p2 = (eos2.gamma() - 1.0) * r2 * (e2 - eos2.q()) - eos2.gamma() * eos2.p_inf();
  return p1 + eos1.p_inf() > 0.0 && p2 + eos2.p_inf() > 0.0 && std::isfinite(p1) &&
         std::isfinite(p2);
}

// Extended array with `g` ghost layers per side under the boundary policy.
std::vector<double> with_ghosts(const Grid1D& grid, int g, BoundaryKind b) {
  const int n = grid.size();
  std::vector<double> ext(7 * (n + 2 * g));
  std::copy(grid.raw().begin(), grid.raw().end(), ext.begin() + 7 * g);
  for (int j = 0; j < g; ++j) {
    double* lo = ext.data() + 7 * (g - 1 - j);
    double* hi = ext.data() + 7 * (n + g + j);
    int src_lo, src_hi;
    bool flip = false;
    switch (b) {
      case BoundaryKind::Transmissive:
        src_lo = 0;
        src_hi = n - 1;
        break;
      case BoundaryKind::Periodic:
        src_lo = n - 1 - j;
        src_hi = j;
        break;
      case BoundaryKind::Reflective:
        src_lo = j;
        src_hi = n - 1 - j;
        flip = true;
        break;
    }
    std::copy(grid.cell(src_lo), grid.cell(src_lo) + 7, lo);
    std::copy(grid.cell(src_hi), grid.cell(src_hi) + 7, hi);
    if (flip) {
      lo[kQ1] = -lo[kQ1];
      lo[kQ2] = -lo[kQ2];
      hi[kQ1] = -hi[kQ1];
      hi[kQ2] = -hi[kQ2];
    }
  }
  return ext;
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

[[noreturn]] void throw_bad_cell(const double* q, int i, double dt) {
  std::ostringstream os;
  os << "solver step rejected after retries: cell " << i << " inadmissible at dt=" << dt
     << " (alpha1=" << q[kA] << " m1=" << q[kM1] << " m2=" << q[kM2] << " eps1=" << q[kE1]
     << " eps2=" << q[kE2] << ")";
  throw InvalidStateError(os.str());
}

struct StepWork {
  std::vector<double> ext;           // conserved with ghosts
  std::vector<CellPrims> prims;      // per extended cell
  std::vector<InterfaceTerms> faces; // n + 1 interfaces
  std::vector<double> candidate;     // 7 n
  std::vector<unsigned char> bad;    // per cell admissibility flag
};

// One attempt at a step of size dt; interface terms do not depend on dt, so retries
// with halved dt reuse them.
void build_faces(StepWork& w, const Grid1D& grid, const SolverConfig& cfg,
                 const StiffenedGas& eos1, const StiffenedGas& eos2, bool parallel) {
  const int n = grid.size();
  const int g = cfg.limiter == LimiterKind::Minmod ? 2 : 1;
  w.ext = with_ghosts(grid, g, cfg.boundary);
  const int nest = n + 2 * g;
  w.prims.assign(nest, CellPrims{});

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < nest; ++i) {
    w.prims[i] = compute_prims(w.ext.data() + 7 * i, cfg.closure, eos1, eos2);
  }
  for (int i = 0; i < nest; ++i) {
    if (!w.prims[i].ok) throw_bad_cell(w.ext.data() + 7 * i, i - g, 0.0);
  }

  w.faces.assign(n + 1, InterfaceTerms{});
  if (cfg.limiter == LimiterKind::Minmod) {
    // Primitive-variable MUSCL: interface states from limited slopes, falling back
    // to the cell value when the reconstruction leaves the admissible set.
    std::vector<std::array<double, 7>> wl(nest), wr(nest);  // cell left/right faces
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 1; i < nest - 1; ++i) {
      const CellPrims& c0 = w.prims[i - 1];
      const CellPrims& c1 = w.prims[i];
      const CellPrims& c2 = w.prims[i + 1];
      const double v0[7] = {c0.alpha1, c0.r1, c0.u1, c0.p1, c0.r2, c0.u2, c0.p2};
      const double v1[7] = {c1.alpha1, c1.r1, c1.u1, c1.p1, c1.r2, c1.u2, c1.p2};
      const double v2[7] = {c2.alpha1, c2.r1, c2.u1, c2.p1, c2.r2, c2.u2, c2.p2};
      std::array<double, 7> lo, hi;
      bool ok = true;
      for (int c = 0; c < 7; ++c) {
        const double s = minmod(v1[c] - v0[c], v2[c] - v1[c]);
        lo[c] = v1[c] - 0.5 * s;
        hi[c] = v1[c] + 0.5 * s;
      }
      ok = lo[0] > 0.0 && lo[0] < 1.0 && hi[0] > 0.0 && hi[0] < 1.0 && lo[1] > 0.0 &&
           hi[1] > 0.0 && lo[4] > 0.0 && hi[4] > 0.0 &&
           lo[3] + eos1.p_inf() > 0.0 && hi[3] + eos1.p_inf() > 0.0 &&
           lo[6] + eos2.p_inf() > 0.0 && hi[6] + eos2.p_inf() > 0.0;
      if (!ok) {
        for (int c = 0; c < 7; ++c) lo[c] = hi[c] = v1[c];
      }
      wl[i] = lo;
      wr[i] = hi;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int f = 0; f <= n; ++f) {
      const int il = f + g - 1, ir = f + g;  // cells adjacent to interface f
      const auto& WL = wr[il];
      const auto& WR = wl[ir];
      MixturePrimitive UL{WL[0], {WL[1], WL[2], WL[3]}, {WL[4], WL[5], WL[6]}};
      MixturePrimitive UR{WR[0], {WR[1], WR[2], WR[3]}, {WR[4], WR[5], WR[6]}};
      const ConservedState QL = prim_to_cons(UL, eos1, eos2);
      const ConservedState QR = prim_to_cons(UR, eos1, eos2);
      const double qL[7] = {QL.alpha1, QL.m1, QL.m2, QL.q1, QL.q2, QL.eps1, QL.eps2};
      const double qR[7] = {QR.alpha1, QR.m1, QR.m2, QR.q1, QR.q2, QR.eps1, QR.eps2};
      w.faces[f] = interface_terms(qL, qR, compute_prims(qL, cfg.closure, eos1, eos2),
                                   compute_prims(qR, cfg.closure, eos1, eos2));
    }
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int f = 0; f <= n; ++f) {
      const int il = f + g - 1, ir = f + g;
      w.faces[f] = interface_terms(w.ext.data() + 7 * il, w.ext.data() + 7 * ir,
                                   w.prims[il], w.prims[ir]);
    }
  }
}

double step_impl(Grid1D& grid, const SolverConfig& cfg, double dt,
                 const StiffenedGas& eos1, const StiffenedGas& eos2,
                 std::int64_t* clip_count, bool parallel) {
  const int n = grid.size();
  if (n < 4) throw PreconditionError("Grid1D: need at least 4 cells");
  StepWork w;
  build_faces(w, grid, cfg, eos1, eos2, parallel);
  w.candidate.assign(7 * n, 0.0);
  w.bad.assign(n, 0);

  double attempt = dt;
  for (int retry = 0;; ++retry) {
    const double nu = attempt / grid.dx();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int i = 0; i < n; ++i) {
      apply_update(grid.cell(i), w.faces[i], w.faces[i + 1], nu,
                   w.candidate.data() + 7 * i);
      w.bad[i] = candidate_ok(w.candidate.data() + 7 * i, eos1, eos2) ? 0 : 1;
    }
    int first_bad = -1;
    for (int i = 0; i < n; ++i) {
      if (w.bad[i]) {
        first_bad = i;
        break;
      }
    }
    if (first_bad < 0) break;
    if (retry >= cfg.max_dt_retries)
      throw_bad_cell(w.candidate.data() + 7 * first_bad, first_bad, attempt);
    attempt *= 0.5;
  }

  std::int64_t clips = 0;
  for (int i = 0; i < n; ++i) {
    if (clip_alpha(w.candidate[7 * i + kA])) ++clips;
  }
  if (clip_count) *clip_count += clips;
  std::copy(w.candidate.begin(), w.candidate.end(), grid.raw().begin());
  return attempt;
}

}  // namespace

Grid1D::Grid1D(int n, double x_lo, double x_hi)
    : n_(n), x_lo_(x_lo), x_hi_(x_hi), dx_((x_hi - x_lo) / n), data_(7 * n, 0.0) {
  if (n < 4) throw PreconditionError("Grid1D: need at least 4 cells");
  if (!(dx_ > 0.0)) throw PreconditionError("Grid1D: domain must have positive width");
}

ConservedState Grid1D::state(int i) const {
  const double* q = cell(i);
  return ConservedState{q[kA], q[kM1], q[kM2], q[kQ1], q[kQ2], q[kE1], q[kE2]};
}

void Grid1D::set_state(int i, const ConservedState& s) {
  double* q = cell(i);
  q[kA] = s.alpha1;
  q[kM1] = s.m1;
  q[kM2] = s.m2;
  q[kQ1] = s.q1;
  q[kQ2] = s.q2;
  q[kE1] = s.eps1;
  q[kE2] = s.eps2;
}

StepDiagnostics grid_totals(const Grid1D& grid, const StiffenedGas& eos1,
                            const StiffenedGas& eos2) {
  StepDiagnostics d;
  // Fixed-order compensated sums keep the reductions deterministic.
  double acc[5] = {0, 0, 0, 0, 0};
  double comp[5] = {0, 0, 0, 0, 0};
  const auto add = [&](int j, double v) {
    const double y = v - comp[j];
    const double t = acc[j] + y;
    comp[j] = (t - acc[j]) - y;
    acc[j] = t;
  };
  double min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const double* q = grid.cell(i);
    add(0, q[kM1]);
    add(1, q[kM2]);
    add(2, q[kQ1] + q[kQ2]);
    add(3, q[kE1] + q[kE2]);
    const MixturePrimitive U = cons_to_prim(grid.state(i), eos1, eos2);
    add(4, q[kM1] * eos1.entropy(U.phase1.rho, U.phase1.p) +
               q[kM2] * eos2.entropy(U.phase2.rho, U.phase2.p));
    const auto m = mixture(U);
    const double c1 = eos1.sound_speed(U.phase1.rho, U.phase1.p);
    const double c2 = eos2.sound_speed(U.phase2.rho, U.phase2.p);
    double marg = std::abs(m.u - (U.phase1.u + c1)) / c1;
    marg = std::min(marg, std::abs(m.u - (U.phase1.u - c1)) / c1);
    marg = std::min(marg, std::abs(m.u - (U.phase2.u + c2)) / c2);
    marg = std::min(marg, std::abs(m.u - (U.phase2.u - c2)) / c2);
    min_margin = std::min(min_margin, marg);
  }
  const double dx = grid.dx();
  d.mass1 = acc[0] * dx;
  d.mass2 = acc[1] * dx;
  d.momentum = acc[2] * dx;
  d.energy = acc[3] * dx;
  d.entropy = acc[4] * dx;
  d.min_resonance_margin = min_margin;
  return d;
}

double dt_cfl(const Grid1D& grid, const SolverConfig& cfg, const StiffenedGas& eos1,
              const StiffenedGas& eos2) {
  double amax = 0.0;
  int bad_cell = -1;
  for (int i = 0; i < grid.size(); ++i) {
    const CellPrims c = compute_prims(grid.cell(i), cfg.closure, eos1, eos2);
    if (!c.ok || !std::isfinite(c.amax)) {
      bad_cell = i;
      break;
    }
    amax = std::max(amax, c.amax);
  }
  if (bad_cell >= 0) {
    std::ostringstream os;
    os << "dt_cfl: non-finite wave speed in cell " << bad_cell;
    throw InvalidStateError(os.str());
  }
  return cfg.cfl * grid.dx() / amax;
}

double step(Grid1D& grid, const SolverConfig& cfg, double dt, const StiffenedGas& eos1,
            const StiffenedGas& eos2, std::int64_t* clip_count) {
  return step_impl(grid, cfg, dt, eos1, eos2, clip_count, cfg.parallel);
}

double step_reference(Grid1D& grid, const SolverConfig& cfg, double dt,
                      const StiffenedGas& eos1, const StiffenedGas& eos2,
                      std::int64_t* clip_count) {
  return step_impl(grid, cfg, dt, eos1, eos2, clip_count, false);
}

ReconstructedInterfaces muscl_reconstruct(const Grid1D& grid, const SolverConfig& cfg,
                                          const StiffenedGas& eos1,
                                          const StiffenedGas& eos2) {
  const int n = grid.size();
  const int g = 2;
  const std::vector<double> ext = with_ghosts(grid, g, cfg.boundary);
  const int nest = n + 2 * g;
  std::vector<CellPrims> prims(nest);
  for (int i = 0; i < nest; ++i) {
    prims[i] = compute_prims(ext.data() + 7 * i, cfg.closure, eos1, eos2);
  }
  ReconstructedInterfaces out;
  out.left.resize(n + 1);
  out.right.resize(n + 1);
  const auto prim_of = [](const CellPrims& c) {
    return MixturePrimitive{c.alpha1, {c.r1, c.u1, c.p1}, {c.r2, c.u2, c.p2}};
  };
  const auto face_states = [&](int i, MixturePrimitive* lo, MixturePrimitive* hi) {
    const CellPrims &c0 = prims[i - 1], &c1 = prims[i], &c2 = prims[i + 1];
    if (cfg.limiter == LimiterKind::None) {
      *lo = *hi = prim_of(c1);
      return;
    }
    const double v0[7] = {c0.alpha1, c0.r1, c0.u1, c0.p1, c0.r2, c0.u2, c0.p2};
    const double v1[7] = {c1.alpha1, c1.r1, c1.u1, c1.p1, c1.r2, c1.u2, c1.p2};
    const double v2[7] = {c2.alpha1, c2.r1, c2.u1, c2.p1, c2.r2, c2.u2, c2.p2};
    double lov[7], hiv[7];
    for (int c = 0; c < 7; ++c) {
      const double s = minmod(v1[c] - v0[c], v2[c] - v1[c]);
      lov[c] = v1[c] - 0.5 * s;
      hiv[c] = v1[c] + 0.5 * s;
    }
    const bool ok = lov[0] > 0.0 && lov[0] < 1.0 && hiv[0] > 0.0 && hiv[0] < 1.0 &&
                    lov[1] > 0.0 && hiv[1] > 0.0 && lov[4] > 0.0 && hiv[4] > 0.0 &&
                    lov[3] + eos1.p_inf() > 0.0 && hiv[3] + eos1.p_inf() > 0.0 &&
                    lov[6] + eos2.p_inf() > 0.0 && hiv[6] + eos2.p_inf() > 0.0;
    if (!ok) {
      *lo = *hi = prim_of(c1);
      return;
    }
    *lo = MixturePrimitive{lov[0], {lov[1], lov[2], lov[3]}, {lov[4], lov[5], lov[6]}};
    *hi = MixturePrimitive{hiv[0], {hiv[1], hiv[2], hiv[3]}, {hiv[4], hiv[5], hiv[6]}};
  };
  for (int f = 0; f <= n; ++f) {
    MixturePrimitive lo_l, hi_l, lo_r, hi_r;
    face_states(f + g - 1, &lo_l, &hi_l);
    face_states(f + g, &lo_r, &hi_r);
    out.left[f] = hi_l;
    out.right[f] = lo_r;
  }
  return out;
}

void split_step(Grid1D& grid, const RelaxationParams& par, double dt, Closure closure,
                const StiffenedGas& eos1, const StiffenedGas& eos2, bool parallel) {
  if (!par.any_active()) return;
  const int n = grid.size();
  std::string first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      const ConservedState q = relax_cell(grid.state(i), par, dt, closure, eos1, eos2);
      grid.set_state(i, q);
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (first_error.empty()) {
          std::ostringstream os;
          os << "relaxation failed in cell " << i << ": " << e.what();
          first_error = os.str();
        }
      }
    }
  }
  if (!first_error.empty()) throw NumericalError(first_error);
}

RunResult run(const SolverConfig& cfg, Grid1D initial, const RelaxationParams& relax,
              const StiffenedGas& eos1, const StiffenedGas& eos2,
              std::vector<double> output_times, const SnapshotCallback& on_snapshot) {
  RunResult rr;
  Grid1D grid = std::move(initial);

  std::sort(output_times.begin(), output_times.end());
  output_times.erase(std::unique(output_times.begin(), output_times.end()),
                     output_times.end());

  const double t_tol = 1e-12 * (1.0 + std::abs(cfg.t_end));
  const auto emit = [&](double t) {
    rr.snapshots.emplace_back(t, grid);
    if (on_snapshot) on_snapshot(t, grid);
  };

  double t = 0.0;
  std::size_t next_out = 0;
  emit(0.0);
  while (next_out < output_times.size() && output_times[next_out] <= t_tol) ++next_out;

  StepDiagnostics d0 = grid_totals(grid, eos1, eos2);
  rr.diagnostics.push_back(d0);

  std::int64_t step_idx = 0;
  std::int64_t clips = 0;
  while (t < cfg.t_end - t_tol) {
    double dt = dt_cfl(grid, cfg, eos1, eos2);
    double target = cfg.t_end;
    if (next_out < output_times.size() && output_times[next_out] < target)
      target = output_times[next_out];
    if (t + dt > target) dt = target - t;
    const double taken = step(grid, cfg, dt, eos1, eos2, &clips);
    split_step(grid, relax, taken, cfg.closure, eos1, eos2, cfg.parallel);
    t += taken;
    ++step_idx;
    StepDiagnostics d = grid_totals(grid, eos1, eos2);
    d.step = step_idx;
    d.t = t;
    d.dt = taken;
    d.clip_count = clips;
    rr.diagnostics.push_back(d);
    while (next_out < output_times.size() && t >= output_times[next_out] - t_tol) {
      emit(t);
      ++next_out;
    }
  }
  if (rr.snapshots.empty() || std::abs(rr.snapshots.back().first - t) > t_tol) {
    if (cfg.t_end > t_tol) emit(t);
  }
  return rr;
}

}  // namespace twofluid
