#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "twofluid/config.hpp"

using namespace twofluid;

namespace {

const char* kMinimalConfig = R"(
# two ideal gases, Riemann pair
[phase1]
gamma = 1.4

[phase2]
gamma = 1.4

[initial]
type = riemann
x_split = 0.5

[initial.left]
alpha1 = 0.7
rho1 = 1.0
u1 = 0.0
p1 = 2.0
rho2 = 1.0
u2 = 0.0
p2 = 2.0

[initial.right]
alpha1 = 0.3
rho1 = 0.5
u1 = 0.0
p1 = 1.0
rho2 = 0.8
u2 = 0.0
p2 = 1.0

[solver]
n_cells = 100
t_end = 0.1

[output]
times = 0.05, 0.1
)";

std::string replace_first(std::string text, const std::string& from,
                          const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

bool message_contains(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const Scenario sc = parse_config(kMinimalConfig);
  CHECK(sc.phase1.gamma == 1.4);
  CHECK(sc.n_cells == 100);
  CHECK(sc.solver.cfl == doctest::Approx(0.45));
  CHECK(sc.solver.closure == Closure::NewModel);
  CHECK(sc.solver.boundary == BoundaryKind::Transmissive);
  CHECK(sc.solver.limiter == LimiterKind::None);
  CHECK(sc.relaxation.pressure.mode == RelaxationMode::Off);
  REQUIRE(sc.output.times.size() == 2);
  CHECK(sc.output.times[1] == 0.1);
  CHECK(sc.initial.kind == InitialKind::RiemannPair);
  CHECK(sc.initial.left.alpha1 == 0.7);
}

TEST_CASE("range violations cite the section") {
  CHECK(message_contains(
      [&] { parse_config(replace_first(kMinimalConfig, "gamma = 1.4", "gamma = 0.9")); },
      "[phase1] gamma must exceed 1"));
  CHECK(message_contains(
      [&] { parse_config(replace_first(kMinimalConfig, "n_cells = 100", "n_cells = 2")); },
      "n_cells"));
  CHECK(message_contains(
      [&] {
        parse_config(replace_first(kMinimalConfig, "t_end = 0.1", "cfl = 1.5"));
      },
      "cfl"));
}

TEST_CASE("closure and enum tags") {
  Scenario sc = parse_config(
      replace_first(kMinimalConfig, "n_cells = 100",
                    "n_cells = 100\nclosure = bn-original\nboundary = periodic\n"
                    "limiter = minmod"));
  CHECK(sc.solver.closure == Closure::BnOriginal);
  CHECK(sc.solver.boundary == BoundaryKind::Periodic);
  CHECK(sc.solver.limiter == LimiterKind::Minmod);

  CHECK(message_contains(
      [&] {
        parse_config(
            replace_first(kMinimalConfig, "n_cells = 100", "n_cells = 100\nclosure = bn"));
      },
      "unknown closure"));
}

TEST_CASE("unknown keys and sections are hard errors with line numbers") {
  CHECK(message_contains(
      [&] {
        parse_config(replace_first(kMinimalConfig, "gamma = 1.4",
                                   "gamma = 1.4\ngama = 1.4"));
      },
      "unknown key 'gama' in [phase1]"));
  CHECK(message_contains(
      [&] { parse_config(std::string(kMinimalConfig) + "\n[typo]\nx = 1\n"); },
      "unknown section [typo]"));
  CHECK(message_contains(
      [&] { parse_config(replace_first(kMinimalConfig, "alpha1 = 0.7", "")); },
      "missing required key 'alpha1' in [initial.left]"));
  CHECK(message_contains(
      [&] { parse_config(replace_first(kMinimalConfig, "rho1 = 1.0", "rho1 = abc")); },
      "is not a number"));
}

TEST_CASE("relaxation channels") {
  Scenario sc = parse_config(std::string(kMinimalConfig) +
                             "\n[relaxation]\neps_p = 1e-6\neps_u = instant\neps_t = inf\n");
  CHECK(sc.relaxation.pressure.mode == RelaxationMode::FiniteRate);
  CHECK(sc.relaxation.pressure.eps == doctest::Approx(1e-6));
  CHECK(sc.relaxation.velocity.mode == RelaxationMode::Instantaneous);
  CHECK(sc.relaxation.thermal.mode == RelaxationMode::Off);

  // thermal has no instantaneous projection
  CHECK(message_contains(
      [&] {
        parse_config(std::string(kMinimalConfig) + "\n[relaxation]\neps_t = instant\n");
      },
      "finite rates only"));
  CHECK(message_contains(
      [&] {
        parse_config(std::string(kMinimalConfig) + "\n[relaxation]\neps_p = -2\n");
      },
      "positive number"));
}

TEST_CASE("alpha bump profile") {
  std::string text(kMinimalConfig);
  // swap the initial block for a smooth profile
  const auto from = text.find("[initial]");
  const auto to = text.find("[solver]");
  text.replace(from, to - from,
               "[initial]\ntype = alpha_bump\nalpha1_base = 0.4\nalpha1_amp = 0.2\n"
               "center = 0.5\nwidth = 0.1\nrho1 = 1\nu1 = 0.5\np1 = 1\n"
               "rho2 = 1\nu2 = 0.5\np2 = 1\n\n");
  const Scenario sc = parse_config(text);
  CHECK(sc.initial.kind == InitialKind::AlphaBump);
  const StiffenedGas e1(sc.phase1), e2(sc.phase2);
  const Grid1D g = build_initial_grid(sc, e1, e2);
  // the bump peaks mid-domain
  CHECK(g.state(sc.n_cells / 2).alpha1 > g.state(0).alpha1 + 0.15);
}

TEST_CASE("state and riemann specs") {
  const char* state_spec = R"(
[phase1]
gamma = 1.4
[phase2]
gamma = 2.0
p_inf = 0.5
[state]
alpha1 = 0.4
rho1 = 1.0
u1 = 0.2
p1 = 1.5
rho2 = 0.9
u2 = -0.1
p2 = 1.2
)";
  const StateSpec ss = parse_state_spec(state_spec);
  CHECK(ss.state.alpha1 == 0.4);
  CHECK(ss.phase2.p_inf == 0.5);

  const char* riemann_spec = R"(
[phase1]
gamma = 1.4
[phase2]
gamma = 1.4
[state.left]
alpha1 = 0.4
rho1 = 1.0
u1 = 0.0
p1 = 1.0
rho2 = 1.0
u2 = 0.0
p2 = 1.0
[state.right]
alpha1 = 0.4
rho1 = 1.625
u1 = 0.62
p1 = 2.0
rho2 = 1.0
u2 = 0.0
p2 = 1.0
[riemann]
wave = acoustic_1_plus
phase = 1
)";
  const RiemannSpec rs = parse_riemann_spec(riemann_spec);
  CHECK(rs.wave == WaveId::Acoustic1Plus);
  CHECK(rs.phase == 1);
  CHECK_FALSE(rs.has_sigma);
}

#ifdef TWOFLUID_CLI_PATH

namespace {

std::string cli_path() { return TWOFLUID_CLI_PATH; }

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli run is deterministic and writes the exact header") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "twofluid_cli_test";
  fs::remove_all(base);
  fs::create_directories(base);

  std::string cfg(kMinimalConfig);
  cfg = replace_first(cfg, "n_cells = 100", "n_cells = 64");
  cfg = replace_first(cfg, "t_end = 0.1", "t_end = 0.05");
  cfg = replace_first(cfg, "times = 0.05, 0.1", "times = 0.05");

  for (const char* sub : {"a", "b"}) {
    const fs::path dir = base / sub;
    std::ofstream out(base / (std::string("cfg_") + sub + ".ini"));
    out << cfg << "\n[output]\ndirectory = " << dir.string() << "\n";
    out.close();
    const int rc = run_cmd(cli_path() + " run " +
                           (base / (std::string("cfg_") + sub + ".ini")).string() +
                           " > /dev/null");
    REQUIRE(rc == 0);
  }

  const std::string snap_a = slurp(base / "a" / "t0.05.csv");
  const std::string snap_b = slurp(base / "b" / "t0.05.csv");
  CHECK(snap_a == snap_b);
  CHECK(snap_a.substr(0, snap_a.find('\n')) ==
        "x,alpha1,rho1,u1,p1,s1,rho2,u2,p2,s2");
  const std::string diag = slurp(base / "a" / "diagnostics.csv");
  CHECK(diag.substr(0, diag.find('\n')) ==
        "step,t,dt,mass1,mass2,momentum,energy,entropy,min_resonance_margin,clip_count");
  CHECK(slurp(base / "a" / "diagnostics.csv") == slurp(base / "b" / "diagnostics.csv"));
  CHECK(fs::exists(base / "a" / "t0.csv"));
  CHECK(fs::exists(base / "a" / "summary.txt"));
}

TEST_CASE("cli exit codes") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "twofluid_cli_exit";
  fs::remove_all(base);
  fs::create_directories(base);

  // config error -> 1
  std::ofstream bad(base / "bad.ini");
  bad << "[phase1]\ngamma = 0.5\n";
  bad.close();
  int rc = run_cmd(cli_path() + " run " + (base / "bad.ini").string() +
                   " 2> /dev/null");
  CHECK(WEXITSTATUS(rc) == 1);

  // missing file -> 1
  rc = run_cmd(cli_path() + " run " + (base / "absent.ini").string() +
               " 2> /dev/null");
  CHECK(WEXITSTATUS(rc) == 1);
}

#endif  // TWOFLUID_CLI_PATH
