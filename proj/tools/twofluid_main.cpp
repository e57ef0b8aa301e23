#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "twofluid/config.hpp"
#include "twofluid/eigenstructure.hpp"
#include "twofluid/lift.hpp"
#include "twofluid/relaxation.hpp"
#include "twofluid/solver1d.hpp"
#include "twofluid/waves.hpp"

namespace {

using namespace twofluid;

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCheck = 3;

// All numeric output uses 17 significant digits so values round-trip exactly.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", t);
  return buf;
}

void write_snapshot(const std::string& dir, double t, const Grid1D& grid,
                    const StiffenedGas& eos1, const StiffenedGas& eos2) {
  const std::filesystem::path path =
      std::filesystem::path(dir) / ("t" + time_tag(t) + ".csv");
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fputs("x,alpha1,rho1,u1,p1,s1,rho2,u2,p2,s2\n", f);
  for (int i = 0; i < grid.size(); ++i) {
    const MixturePrimitive U = cons_to_prim(grid.state(i), eos1, eos2);
    const double s1 = eos1.entropy(U.phase1.rho, U.phase1.p);
    const double s2 = eos2.entropy(U.phase2.rho, U.phase2.p);
    std::fprintf(f, "%s,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", num(grid.x_center(i)).c_str(),
                 num(U.alpha1).c_str(), num(U.phase1.rho).c_str(),
                 num(U.phase1.u).c_str(), num(U.phase1.p).c_str(), num(s1).c_str(),
                 num(U.phase2.rho).c_str(), num(U.phase2.u).c_str(),
                 num(U.phase2.p).c_str(), num(s2).c_str());
  }
  std::fclose(f);
}

void write_diagnostics(const std::string& dir, const DiagnosticsSeries& diag) {
  const std::filesystem::path path = std::filesystem::path(dir) / "diagnostics.csv";
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fputs(
      "step,t,dt,mass1,mass2,momentum,energy,entropy,min_resonance_margin,clip_count\n",
      f);
  for (const auto& d : diag) {
    std::fprintf(f, "%" PRId64 ",%s,%s,%s,%s,%s,%s,%s,%s,%" PRId64 "\n", d.step,
                 num(d.t).c_str(), num(d.dt).c_str(), num(d.mass1).c_str(),
                 num(d.mass2).c_str(), num(d.momentum).c_str(), num(d.energy).c_str(),
                 num(d.entropy).c_str(), num(d.min_resonance_margin).c_str(),
                 d.clip_count);
  }
  std::fclose(f);
}

void write_summary(const std::string& dir, const DiagnosticsSeries& diag) {
  const std::filesystem::path path = std::filesystem::path(dir) / "summary.txt";
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  const auto& first = diag.front();
  const auto& last = diag.back();
  const auto drift = [](double a, double b) {
    return (b - a) / (std::abs(a) > 1e-30 ? std::abs(a) : 1e-30);
  };
  std::fprintf(f, "steps                 %" PRId64 "\n", last.step);
  std::fprintf(f, "final time            %s\n", num(last.t).c_str());
  std::fprintf(f, "mass1 drift           %s\n", num(drift(first.mass1, last.mass1)).c_str());
  std::fprintf(f, "mass2 drift           %s\n", num(drift(first.mass2, last.mass2)).c_str());
  std::fprintf(f, "momentum drift        %s\n",
               num(last.momentum - first.momentum).c_str());
  std::fprintf(f, "energy drift          %s\n",
               num(drift(first.energy, last.energy)).c_str());
  std::fprintf(f, "entropy change        %s\n",
               num(last.entropy - first.entropy).c_str());
  double min_incr = 0.0;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    min_incr = std::min(min_incr, diag[i].entropy - diag[i - 1].entropy);
  }
  std::fprintf(f, "min entropy increment %s\n", num(min_incr).c_str());
  std::fprintf(f, "min resonance margin  %s\n",
               num(last.min_resonance_margin).c_str());
  std::fprintf(f, "clip count            %" PRId64 "\n", last.clip_count);
  std::fclose(f);
}

int cmd_run(const std::string& config_path) {
  Scenario sc;
  try {
    sc = load_scenario(config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    const StiffenedGas eos1(sc.phase1), eos2(sc.phase2);
    std::filesystem::create_directories(sc.output.directory);
    Grid1D grid = build_initial_grid(sc, eos1, eos2);
    const auto writer = [&](double t, const Grid1D& g) {
      write_snapshot(sc.output.directory, t, g, eos1, eos2);
    };
    RunResult rr =
        run(sc.solver, std::move(grid), sc.relaxation, eos1, eos2, sc.output.times,
            writer);
    write_diagnostics(sc.output.directory, rr.diagnostics);
    write_summary(sc.output.directory, rr.diagnostics);
    std::printf("run finished: %zu snapshots, %" PRId64 " steps\n",
                rr.snapshots.size(),
                rr.diagnostics.back().step);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  }
}

void print_matrix(const char* name, const Matrix7& M) {
  std::printf("%s =\n", name);
  for (int i = 0; i < 7; ++i) {
    std::printf("  ");
    for (int j = 0; j < 7; ++j) {
      std::printf("% 14.6e", M(i, j));
    }
    std::printf("\n");
  }
}

int cmd_eigen(const std::string& config_path, const std::string& csv_path) {
  StateSpec spec;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    spec = parse_state_spec(ss.str());
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    const StiffenedGas eos1(spec.phase1), eos2(spec.phase2);
    const MixturePrimitive& U = spec.state;
    const EigenStructure es = eigenstructure(U, eos1, eos2);
    const Symmetrizer sym = symmetrizer(U, eos1, eos2);
    const FieldClassification cls = classify_fields(U, eos1, eos2);

    static const char* wave_names[7] = {"u",       "u1+c1", "u1-c1", "u1",
                                        "u2+c2", "u2-c2", "u2"};
    std::printf("resonance margin  %s\n", num(es.resonance_margin).c_str());
    std::printf("cond(R)           %s\n\n", num(es.condition_number).c_str());
    std::printf("%-8s %-22s %-14s %s\n", "wave", "lambda", "grad(l).r", "nature");
    for (int j = 0; j < 7; ++j) {
      std::printf("%-8s %-22s %-14.3e %s\n", wave_names[j], num(es.lambda(j)).c_str(),
                  cls.grad_lambda_dot_r[j],
                  cls.nature[j] == FieldNature::LinearlyDegenerate
                      ? "linearly degenerate"
                      : "genuinely nonlinear");
    }
    std::printf("\n");
    print_matrix("R", es.R);
    std::printf("\n");
    print_matrix("P", sym.P);
    std::printf("\ntheta_alpha = %s\n", num(sym.theta_alpha).c_str());

    if (!csv_path.empty()) {
      std::FILE* f = std::fopen(csv_path.c_str(), "w");
      if (!f) throw std::runtime_error("cannot open " + csv_path);
      std::fputs("block,row,c0,c1,c2,c3,c4,c5,c6\n", f);
      std::fprintf(f, "lambda,0");
      for (int j = 0; j < 7; ++j) std::fprintf(f, ",%s", num(es.lambda(j)).c_str());
      std::fprintf(f, "\n");
      for (int i = 0; i < 7; ++i) {
        std::fprintf(f, "R,%d", i);
        for (int j = 0; j < 7; ++j) std::fprintf(f, ",%s", num(es.R(i, j)).c_str());
        std::fprintf(f, "\n");
      }
      for (int i = 0; i < 7; ++i) {
        std::fprintf(f, "P,%d", i);
        for (int j = 0; j < 7; ++j) std::fprintf(f, ",%s", num(sym.P(i, j)).c_str());
        std::fprintf(f, "\n");
      }
      std::fclose(f);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "eigen analysis failed: %s\n", e.what());
    return kExitSolver;
  }
}

int cmd_riemann(const std::string& config_path) {
  RiemannSpec spec;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    spec = parse_riemann_spec(ss.str());
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    const StiffenedGas eos1(spec.phase1), eos2(spec.phase2);
    static const char* inv_names[7] = {
        "interface_u", "contact_1", "acoustic_1_plus", "acoustic_1_minus",
        "contact_2",   "acoustic_2_plus", "acoustic_2_minus"};
    const WaveId w = spec.wave;
    const auto il = riemann_invariants(w, spec.left, eos1, eos2);
    const auto ir = riemann_invariants(w, spec.right, eos1, eos2);
    std::printf("wave family: %s\n", inv_names[static_cast<int>(w)]);
    std::printf("%-4s %-24s %-24s %s\n", "inv", "left", "right", "delta");
    for (int i = 0; i < 6; ++i) {
      std::printf("%-4d %-24s %-24s %s\n", i, num(il[i]).c_str(), num(ir[i]).c_str(),
                  num(ir[i] - il[i]).c_str());
    }

    ShockCandidate cand;
    cand.left = spec.left;
    cand.right = spec.right;
    cand.phase = spec.phase;
    if (spec.has_sigma) {
      cand.sigma = spec.sigma;
    } else {
      // mass-flux relation [m_k (u_k - sigma)] = 0
      const double mL = spec.left.alpha(spec.phase) * spec.left.phase(spec.phase).rho;
      const double mR =
          spec.right.alpha(spec.phase) * spec.right.phase(spec.phase).rho;
      const double uL = spec.left.phase(spec.phase).u;
      const double uR = spec.right.phase(spec.phase).u;
      cand.sigma = std::abs(mL - mR) > 1e-14 * (mL + mR)
                       ? (mL * uL - mR * uR) / (mL - mR)
                       : 0.5 * (uL + uR);
      std::printf("\nsigma (mass-flux relation) = %s\n", num(cand.sigma).c_str());
    }
    try {
      const RhResidual res = rankine_hugoniot_residual(cand, eos1, eos2);
      std::printf("\njump-condition residuals (normalized):\n");
      std::printf("  alpha     %s\n", num(res.alpha_jump).c_str());
      for (int k = 0; k < 2; ++k) {
        std::printf("  phase %d   mass %-13.3e momentum %-13.3e energy %-13.3e\n",
                    k + 1, res.mass[k], res.momentum[k], res.energy[k]);
      }
      const Admissibility adm = admissible(cand, eos1, eos2);
      std::printf("\nentropy production: %s\n", num(adm.entropy_production).c_str());
      std::printf("lax condition:      %s\n", adm.lax_ok ? "satisfied" : "violated");
      std::printf("admissible: %s\n", adm.admissible ? "true" : "false");
    } catch (const PreconditionError& e) {
      std::printf("\njump conditions not applicable: %s\n", e.what());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "riemann analysis failed: %s\n", e.what());
    return kExitSolver;
  }
}

// ---------------------------------------------------------------------------
// check: the full property suite over randomized states; exit 3 on any failure.

struct CheckContext {
  int failures = 0;
  void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

// Total energy per unit volume, m1 E1 + m2 E2.
double ecs_total(const MixturePrimitive& U, const StiffenedGas& eos1,
                 const StiffenedGas& eos2) {
  const ConservedState q = prim_to_cons(U, eos1, eos2);
  return q.eps1 + q.eps2;
}

MixturePrimitive random_state(std::mt19937_64& rng, const StiffenedGas& eos1,
                              const StiffenedGas& eos2, double min_margin) {
  std::uniform_real_distribution<double> ua(0.05, 0.95), ur(0.3, 3.0), up(0.6, 4.0),
      uu(-0.5, 0.5);
  for (;;) {
    MixturePrimitive U;
    U.alpha1 = ua(rng);
    U.phase1 = {ur(rng), uu(rng), up(rng)};
    U.phase2 = {ur(rng), uu(rng), up(rng)};
    if (!admissible(U, eos1, eos2)) continue;
    if (resonance_margin(U, eos1, eos2) > min_margin) return U;
  }
}

int cmd_check() {
  CheckContext cc;
  std::mt19937_64 rng(20250810);
  const StiffenedGas ideal14({1.4, 0.0, 1.0, 0.0});
  const StiffenedGas sg1({1.6, 0.4, 1.3, 0.05});
  const StiffenedGas sg2({2.2, 0.1, 0.7, -0.02});

  // eos round trips and thermodynamic identities
  {
    bool ok = true;
    std::uniform_real_distribution<double> ur(0.2, 5.0), up(0.3, 8.0);
    for (int i = 0; i < 300 && ok; ++i) {
      const double rho = ur(rng), p = up(rng);
      for (const StiffenedGas* eos : {&ideal14, &sg1, &sg2}) {
        const double e = eos->internal_energy(rho, p);
        ok = ok && std::abs(eos->pressure(rho, e) - p) <= 1e-14 * (std::abs(p) + 1.0);
        const double h = eos->enthalpy(rho, p);
        ok = ok && std::abs(h - e - p / rho) <= 1e-13 * (std::abs(h) + 1.0);
      }
    }
    cc.report("eos: pressure/internal_energy round trip", ok);
  }

  // closure algebra: interfacial work identity and Ransom compatibility
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.0);
      const auto m = mixture(U);
      const double puI = interfacial_work(U, Closure::NewModel);
      const double pI = interfacial_pressure(U, Closure::NewModel);
      const double rhs =
          pI * m.u - m.Y1 * m.Y2 * m.W * (U.phase1.p - U.phase2.p);
      const double scale = std::abs(puI) + std::abs(pI * m.u) + 1.0;
      worst = std::max(worst, std::abs(puI - rhs) / scale);
      const double ransom = U.phase1.u * U.phase1.p - U.phase2.u * U.phase2.p +
                            (U.phase2.u - U.phase1.u) * pI +
                            m.u * (U.phase2.p - U.phase1.p);
      worst = std::max(worst, std::abs(ransom) / scale);
    }
    ok = worst <= 1e-13;
    cc.report("state: interfacial work identity", ok, "max " + num(worst));
  }

  // conserved <-> primitive round trip
  {
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.0);
      const MixturePrimitive V = cons_to_prim(prim_to_cons(U, sg1, sg2), sg1, sg2);
      worst = std::max(worst, std::abs(V.alpha1 - U.alpha1));
      worst = std::max(worst, std::abs(V.phase1.p - U.phase1.p) /
                                  (std::abs(U.phase1.p) + 1.0));
      worst = std::max(worst, std::abs(V.phase2.rho - U.phase2.rho) /
                                  (std::abs(U.phase2.rho) + 1.0));
    }
    cc.report("state: cons/prim round trip", worst <= 1e-13, "max " + num(worst));
  }

  // entropy flux forms agree
  {
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.0);
      const double a = entropy_flux(U, sg1, sg2);
      const double b = entropy_flux_mixture_form(U, sg1, sg2);
      worst = std::max(worst, std::abs(a - b) / (std::abs(a) + 1.0));
    }
    cc.report("state: entropy flux split form", worst <= 1e-12, "max " + num(worst));
  }

  // eigenstructure residual and symmetrizer
  {
    double worst_eig = 0.0, worst_sym = 0.0;
    bool spd = true;
    for (int i = 0; i < 500; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.02);
      const Matrix7 M = assemble_quasilinear(U, sg1, sg2);
      const EigenStructure es = eigenstructure(U, sg1, sg2);
      worst_eig = std::max(worst_eig,
                           (M * es.R - es.R * es.lambda.asDiagonal().toDenseMatrix())
                                   .norm() /
                               M.norm());
      const Symmetrizer sym = symmetrizer(U, sg1, sg2);
      const Matrix7 PM = sym.P * M;
      worst_sym = std::max(worst_sym,
                           (PM - PM.transpose()).norm() / (sym.P.norm() * M.norm()));
      Eigen::SelfAdjointEigenSolver<Matrix7> saes(sym.P);
      spd = spd && saes.eigenvalues()(0) > 0.0;
    }
    cc.report("eigen: M R = R Lambda", worst_eig <= 1e-10, "max " + num(worst_eig));
    cc.report("eigen: P SPD and PM symmetric", spd && worst_sym <= 1e-10,
              "max asym " + num(worst_sym));
  }

  // characteristic fields
  {
    double worst_ld = 0.0, worst_gn = 0.0;
    for (int i = 0; i < 60; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.05);
      const FieldClassification cls = classify_fields(U, sg1, sg2);
      worst_ld = std::max({worst_ld, std::abs(cls.grad_lambda_dot_r[0]),
                           std::abs(cls.grad_lambda_dot_r[3]),
                           std::abs(cls.grad_lambda_dot_r[6])});
      const double G1 = 0.5 * (sg1.gamma() + 1.0), G2 = 0.5 * (sg2.gamma() + 1.0);
      worst_gn = std::max({worst_gn, std::abs(cls.grad_lambda_dot_r[1] - G1),
                           std::abs(cls.grad_lambda_dot_r[2] - G1),
                           std::abs(cls.grad_lambda_dot_r[4] - G2),
                           std::abs(cls.grad_lambda_dot_r[5] - G2)});
    }
    cc.report("eigen: contacts linearly degenerate", worst_ld <= 1e-7,
              "max " + num(worst_ld));
    cc.report("eigen: acoustics genuinely nonlinear", worst_gn <= 1e-5,
              "max " + num(worst_gn));
  }

  // Hugoniot / admissibility
  {
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.0);
      const int phase = 1 + (i % 2);
      const double pL = U.phase(phase).p;
      const HugoniotPoint hp = hugoniot_state(U, phase, 2.0 * pL + (phase == 1 ? sg1 : sg2).p_inf(),
                                              sg1, sg2);
      ShockCandidate cand{U, hp.right_minus, hp.sigma_minus, phase};
      ok = ok && rankine_hugoniot_residual(cand, sg1, sg2).max_abs() <= 1e-10;
      const Admissibility adm = admissible(cand, sg1, sg2);
      ok = ok && adm.admissible && adm.entropy_production > 0.0;
      ShockCandidate rev{hp.right_minus, U, hp.sigma_minus, phase};
      ok = ok && !admissible(rev, sg1, sg2).admissible;
    }
    cc.report("waves: Hugoniot closes and entropy selects the compressive branch", ok);
  }

  // relaxation: entropy production and conservation of the projections
  {
    bool ok = true;
    RelaxationParams fr;
    fr.pressure = {RelaxationMode::FiniteRate, 0.5};
    fr.velocity = {RelaxationMode::FiniteRate, 0.7};
    fr.thermal = {RelaxationMode::FiniteRate, 0.9};
    for (int i = 0; i < 2000 && ok; ++i) {
      const MixturePrimitive U = random_state(rng, sg1, sg2, 0.0);
      ok = ok && entropy_production_rate(U, fr, sg1, sg2) >= 0.0;
      const MixturePrimitive V = relax_velocity_instant(U, sg1, sg2);
      const auto mU = mixture(U);
      const auto mV = mixture(V);
      const double escale = std::abs(ecs_total(U, sg1, sg2)) + 1.0;
      ok = ok && std::abs(mV.u - mU.u) <= 1e-13 * (std::abs(mU.u) + 1.0);
      ok = ok && std::abs(ecs_total(V, sg1, sg2) - ecs_total(U, sg1, sg2)) <=
                     1e-12 * escale;
    }
    cc.report("relaxation: production >= 0, projections conservative", ok);
  }

  // lift
  {
    std::uniform_real_distribution<double> uv(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      LiftInputs in;
      in.rho = 1.0 + std::abs(uv(rng));
      in.Y1 = 0.3 + 0.4 * std::abs(uv(rng));
      in.Y2 = 1.0 - in.Y1;
      in.grad_alpha1 = Eigen::Vector3d(uv(rng), uv(rng), uv(rng));
      in.v = Eigen::Vector3d(uv(rng), uv(rng), uv(rng));
      in.W = Eigen::Vector3d(uv(rng), uv(rng), uv(rng));
      worst = std::max(worst, std::abs(lift_force(in).dot(in.W)));
    }
    cc.report("lift: W . f = 0", worst <= 1e-14, "max " + num(worst));
  }

  // solver: uniform state preserved, periodic conservation
  {
    const StiffenedGas e1({1.4, 0.0, 1.0, 0.0}), e2({1.9, 0.3, 1.0, 0.0});
    SolverConfig cfg;
    cfg.boundary = BoundaryKind::Periodic;
    Grid1D grid(64, 0.0, 1.0);
    MixturePrimitive U{0.4, {1.0, 0.3, 1.2}, {1.5, -0.2, 1.1}};
    for (int i = 0; i < grid.size(); ++i) grid.set_state(i, prim_to_cons(U, e1, e2));
    const std::vector<double> before = grid.raw();
    step(grid, cfg, dt_cfl(grid, cfg, e1, e2), e1, e2);
    double worst = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
      worst = std::max(worst, std::abs(grid.raw()[i] - before[i]) /
                                  (std::abs(before[i]) + 1.0));
    }
    cc.report("solver: uniform state preserved", worst <= 1e-14, "max " + num(worst));

    // shock tube conservation over 50 periodic steps
    for (int i = 0; i < grid.size(); ++i) {
      MixturePrimitive L{0.7, {1.0, 0.0, 2.0}, {1.2, 0.0, 2.1}};
      MixturePrimitive R{0.3, {0.6, 0.0, 1.0}, {1.0, 0.0, 0.9}};
      grid.set_state(i, prim_to_cons(grid.x_center(i) < 0.5 ? L : R, e1, e2));
    }
    const StepDiagnostics d0 = grid_totals(grid, e1, e2);
    bool entropy_ok = true;
    double prev_entropy = d0.entropy;
    for (int s = 0; s < 50; ++s) {
      step(grid, cfg, dt_cfl(grid, cfg, e1, e2), e1, e2);
      const StepDiagnostics d = grid_totals(grid, e1, e2);
      entropy_ok = entropy_ok &&
                   d.entropy >= prev_entropy - 1e-10 * std::abs(prev_entropy);
      prev_entropy = d.entropy;
    }
    const StepDiagnostics d1 = grid_totals(grid, e1, e2);
    const double drift =
        std::max({std::abs(d1.mass1 - d0.mass1) / std::abs(d0.mass1),
                  std::abs(d1.mass2 - d0.mass2) / std::abs(d0.mass2),
                  std::abs(d1.energy - d0.energy) / std::abs(d0.energy)});
    cc.report("solver: periodic conservation", drift <= 1e-12, "drift " + num(drift));
    cc.report("solver: discrete entropy non-decreasing", entropy_ok);
  }

  std::printf("\n%d check(s) failed\n", cc.failures);
  return cc.failures == 0 ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* env = std::getenv("TWOFLUID_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif

  CLI::App app{"two-fluid seven-equation model: solver and analysis tools"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "integrate a scenario and write CSVs");
  run_cmd->add_option("config", run_config, "scenario file")->required();

  std::string eigen_config, eigen_csv;
  auto* eigen_cmd =
      app.add_subcommand("eigen", "eigenstructure/symmetrizer report for a state");
  eigen_cmd->add_option("config", eigen_config, "state spec file")->required();
  eigen_cmd->add_option("--csv", eigen_csv, "also write Lambda, R, P to this CSV");

  std::string riemann_config;
  auto* riemann_cmd = app.add_subcommand(
      "riemann", "invariants/jump-condition report for a pair of states");
  riemann_cmd->add_option("config", riemann_config, "two-state spec file")->required();

  auto* check_cmd = app.add_subcommand("check", "run the full property suite");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return cmd_run(run_config);
  if (eigen_cmd->parsed()) return cmd_eigen(eigen_config, eigen_csv);
  if (riemann_cmd->parsed()) return cmd_riemann(riemann_config);
  if (check_cmd->parsed()) return cmd_check();
  return 0;
}
