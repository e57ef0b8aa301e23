#include "twofluid/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace twofluid {

namespace {

struct Entry {
  std::string value;
  int line;
  mutable bool used = false;
};

// Parsed INI text: section -> key -> (value, line). Lowercase snake_case keys,
// '#' or ';' comments, '=' separated.
class Ini {
public:
  explicit Ini(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find_first_of("#;");
      if (hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']')
          fail(lineno, "unterminated section header '" + t + "'");
        section = trim(t.substr(1, t.size() - 2));
        if (section.empty()) fail(lineno, "empty section name");
        sections_[section];  // remember even if empty
        section_lines_[section] = lineno;
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        fail(lineno, "expected 'key = value', got '" + t + "'");
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key.empty()) fail(lineno, "empty key");
      if (section.empty()) fail(lineno, "key '" + key + "' outside any section");
      auto& sec = sections_[section];
      if (sec.count(key))
        fail(lineno, "duplicate key '" + key + "' in [" + section + "]");
      sec[key] = Entry{value, lineno};
    }
  }

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

  const Entry* find(const std::string& sec, const std::string& key) const {
    auto it = sections_.find(sec);
    if (it == sections_.end()) return nullptr;
    auto jt = it->second.find(key);
    if (jt == it->second.end()) return nullptr;
    jt->second.used = true;
    return &jt->second;
  }

  const Entry& require(const std::string& sec, const std::string& key) const {
    const Entry* e = find(sec, key);
    if (!e) {
      std::ostringstream os;
      os << "missing required key '" << key << "' in [" << sec << "]";
      throw ConfigError(os.str());
    }
    return *e;
  }

  double number(const std::string& sec, const std::string& key) const {
    const Entry& e = require(sec, key);
    return to_number(sec, key, e);
  }

  double number_or(const std::string& sec, const std::string& key, double dflt) const {
    const Entry* e = find(sec, key);
    return e ? to_number(sec, key, *e) : dflt;
  }

  std::string text(const std::string& sec, const std::string& key) const {
    return require(sec, key).value;
  }

  std::string text_or(const std::string& sec, const std::string& key,
                      const std::string& dflt) const {
    const Entry* e = find(sec, key);
    return e ? e->value : dflt;
  }

  // After parsing: every present section must be expected and every key consumed.
  void check_consumed(const std::set<std::string>& known_sections) const {
    for (const auto& [sec, keys] : sections_) {
      if (!known_sections.count(sec)) {
        std::ostringstream os;
        os << "unknown section [" << sec << "] at line " << section_lines_.at(sec);
        throw ConfigError(os.str());
      }
      for (const auto& [key, e] : keys) {
        if (!e.used) {
          std::ostringstream os;
          os << "unknown key '" << key << "' in [" << sec << "] at line " << e.line;
          throw ConfigError(os.str());
        }
      }
    }
  }

  [[noreturn]] static void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "config line " << line << ": " << msg;
    throw ConfigError(os.str());
  }

private:
  static std::string trim(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
  }

  static double to_number(const std::string& sec, const std::string& key,
                          const Entry& e) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      std::ostringstream os;
      os << "[" << sec << "] " << key << " (line " << e.line << "): '" << e.value
         << "' is not a number";
      throw ConfigError(os.str());
    }
  }

  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;
};

EosParams parse_eos(const Ini& ini, const std::string& sec) {
  EosParams p;
  p.gamma = ini.number(sec, "gamma");
  p.p_inf = ini.number_or(sec, "p_inf", 0.0);
  p.cv = ini.number_or(sec, "cv", 1.0);
  p.q = ini.number_or(sec, "q", 0.0);
  if (!(p.gamma > 1.0)) {
    std::ostringstream os;
    os << "[" << sec << "] gamma must exceed 1 (got " << p.gamma << ")";
    throw ConfigError(os.str());
  }
  if (!(p.cv > 0.0)) {
    std::ostringstream os;
    os << "[" << sec << "] cv must be positive (got " << p.cv << ")";
    throw ConfigError(os.str());
  }
  if (!(p.p_inf >= 0.0)) {
    std::ostringstream os;
    os << "[" << sec << "] p_inf must be non-negative (got " << p.p_inf << ")";
    throw ConfigError(os.str());
  }
  return p;
}

MixturePrimitive parse_state(const Ini& ini, const std::string& sec) {
  MixturePrimitive U;
  U.alpha1 = ini.number(sec, "alpha1");
  U.phase1.rho = ini.number(sec, "rho1");
  U.phase1.u = ini.number(sec, "u1");
  U.phase1.p = ini.number(sec, "p1");
  U.phase2.rho = ini.number(sec, "rho2");
  U.phase2.u = ini.number(sec, "u2");
  U.phase2.p = ini.number(sec, "p2");
  if (!(U.alpha1 > 0.0 && U.alpha1 < 1.0)) {
    std::ostringstream os;
    os << "[" << sec << "] alpha1 must lie strictly inside (0,1)";
    throw ConfigError(os.str());
  }
  if (!(U.phase1.rho > 0.0 && U.phase2.rho > 0.0)) {
    std::ostringstream os;
    os << "[" << sec << "] densities must be positive";
    throw ConfigError(os.str());
  }
  return U;
}

Closure parse_closure(const Ini& ini, const std::string& sec, const std::string& key) {
  const std::string v = ini.text_or(sec, key, "new-model");
  if (v == "new-model") return Closure::NewModel;
  if (v == "bn-original") return Closure::BnOriginal;
  if (v == "bn-saurel") return Closure::BnSaurel;
  std::ostringstream os;
  os << "[" << sec << "] " << key << ": unknown closure '" << v
     << "' (expected new-model | bn-original | bn-saurel)";
  throw ConfigError(os.str());
}

RelaxationChannel parse_channel(const Ini& ini, const std::string& key,
                                bool instant_allowed) {
  RelaxationChannel ch;
  const Entry* e = ini.find("relaxation", key);
  if (!e) return ch;
  const std::string& v = e->value;
  if (v == "inf") return ch;
  if (v == "instant") {
    if (!instant_allowed) {
      std::ostringstream os;
      os << "[relaxation] " << key << " (line " << e->line
         << "): thermal relaxation supports finite rates only";
      throw ConfigError(os.str());
    }
    ch.mode = RelaxationMode::Instantaneous;
    ch.eps = 0.0;
    return ch;
  }
  try {
    std::size_t pos = 0;
    const double eps = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    if (!(eps > 0.0)) throw std::invalid_argument("");
    ch.mode = RelaxationMode::FiniteRate;
    ch.eps = eps;
    return ch;
  } catch (const std::exception&) {
    std::ostringstream os;
    os << "[relaxation] " << key << " (line " << e->line << "): '" << v
       << "' must be a positive number, 'inf', or 'instant'";
    throw ConfigError(os.str());
  }
}

std::vector<double> parse_times(const Ini& ini) {
  std::vector<double> times;
  const Entry* e = ini.find("output", "times");
  if (!e) return times;
  std::istringstream in(e->value);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double t = std::stod(tok, &pos);
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
        ++pos;
      if (pos != tok.size()) throw std::invalid_argument("");
      if (t < 0.0) throw std::invalid_argument("");
      times.push_back(t);
    } catch (const std::exception&) {
      std::ostringstream os;
      os << "[output] times (line " << e->line << "): bad entry '" << tok << "'";
      throw ConfigError(os.str());
    }
  }
  return times;
}

}  // namespace

Scenario parse_config(const std::string& text) {
  const Ini ini(text);
  Scenario sc;
  sc.phase1 = parse_eos(ini, "phase1");
  sc.phase2 = parse_eos(ini, "phase2");

  const std::string itype = ini.text_or("initial", "type", "riemann");
  std::set<std::string> known = {"phase1", "phase2", "initial",
                                 "solver", "relaxation", "output"};
  if (itype == "riemann") {
    sc.initial.kind = InitialKind::RiemannPair;
    sc.initial.x_split = ini.number_or("initial", "x_split", 0.5);
    sc.initial.left = parse_state(ini, "initial.left");
    sc.initial.right = parse_state(ini, "initial.right");
    known.insert("initial.left");
    known.insert("initial.right");
  } else if (itype == "alpha_bump") {
    sc.initial.kind = InitialKind::AlphaBump;
    sc.initial.alpha_base = ini.number("initial", "alpha1_base");
    sc.initial.alpha_amp = ini.number("initial", "alpha1_amp");
    sc.initial.center = ini.number("initial", "center");
    sc.initial.width = ini.number("initial", "width");
    sc.initial.bg1.rho = ini.number("initial", "rho1");
    sc.initial.bg1.u = ini.number("initial", "u1");
    sc.initial.bg1.p = ini.number("initial", "p1");
    sc.initial.bg2.rho = ini.number("initial", "rho2");
    sc.initial.bg2.u = ini.number("initial", "u2");
    sc.initial.bg2.p = ini.number("initial", "p2");
    if (!(sc.initial.width > 0.0))
      throw ConfigError("[initial] width must be positive");
    const double lo = sc.initial.alpha_base;
    const double hi = sc.initial.alpha_base + sc.initial.alpha_amp;
    if (!(std::min(lo, hi) > 0.0 && std::max(lo, hi) < 1.0))
      throw ConfigError("[initial] alpha1 profile must stay inside (0,1)");
  } else {
    throw ConfigError("[initial] type: unknown profile '" + itype +
                      "' (expected riemann | alpha_bump)");
  }

  sc.n_cells = static_cast<int>(ini.number("solver", "n_cells"));
  if (sc.n_cells < 4) throw ConfigError("[solver] n_cells must be at least 4");
  sc.x_lo = ini.number_or("solver", "x_lo", 0.0);
  sc.x_hi = ini.number_or("solver", "x_hi", 1.0);
  if (!(sc.x_hi > sc.x_lo)) throw ConfigError("[solver] x_hi must exceed x_lo");
  sc.solver.cfl = ini.number_or("solver", "cfl", 0.45);
  if (!(sc.solver.cfl > 0.0 && sc.solver.cfl <= 1.0))
    throw ConfigError("[solver] cfl must lie in (0, 1]");
  sc.solver.t_end = ini.number_or("solver", "t_end", 0.0);
  if (sc.solver.t_end < 0.0) throw ConfigError("[solver] t_end must be non-negative");

  const std::string scheme = ini.text_or("solver", "scheme", "rusanov-pc");
  if (scheme != "rusanov-pc")
    throw ConfigError("[solver] scheme: unknown scheme '" + scheme +
                      "' (expected rusanov-pc)");
  sc.solver.scheme = SchemeKind::RusanovPC;

  const std::string boundary = ini.text_or("solver", "boundary", "transmissive");
  if (boundary == "transmissive")
    sc.solver.boundary = BoundaryKind::Transmissive;
  else if (boundary == "periodic")
    sc.solver.boundary = BoundaryKind::Periodic;
  else if (boundary == "reflective")
    sc.solver.boundary = BoundaryKind::Reflective;
  else
    throw ConfigError("[solver] boundary: unknown tag '" + boundary +
                      "' (expected transmissive | periodic | reflective)");

  sc.solver.closure = parse_closure(ini, "solver", "closure");

  const std::string limiter = ini.text_or("solver", "limiter", "none");
  if (limiter == "none")
    sc.solver.limiter = LimiterKind::None;
  else if (limiter == "minmod")
    sc.solver.limiter = LimiterKind::Minmod;
  else
    throw ConfigError("[solver] limiter: unknown tag '" + limiter +
                      "' (expected none | minmod)");

  sc.relaxation.pressure = parse_channel(ini, "eps_p", true);
  sc.relaxation.velocity = parse_channel(ini, "eps_u", true);
  // both spellings of the thermal key are accepted
  sc.relaxation.thermal = parse_channel(ini, "eps_t", false);
  if (sc.relaxation.thermal.mode == RelaxationMode::Off)
    sc.relaxation.thermal = parse_channel(ini, "eps_T", false);

  sc.output.times = parse_times(ini);
  sc.output.directory = ini.text_or("output", "directory", ".");

  ini.check_consumed(known);

  // Validate the initial states against the EOS.
  const StiffenedGas eos1(sc.phase1), eos2(sc.phase2);
  if (sc.initial.kind == InitialKind::RiemannPair) {
    for (const MixturePrimitive* U : {&sc.initial.left, &sc.initial.right}) {
      if (!admissible(*U, eos1, eos2))
        throw ConfigError("initial state violates EOS admissibility (p + p_inf > 0)");
    }
  } else {
    MixturePrimitive U{sc.initial.alpha_base, sc.initial.bg1, sc.initial.bg2};
    if (!admissible(U, eos1, eos2))
      throw ConfigError("initial state violates EOS admissibility (p + p_inf > 0)");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

StateSpec parse_state_spec(const std::string& text) {
  const Ini ini(text);
  StateSpec spec;
  spec.phase1 = parse_eos(ini, "phase1");
  spec.phase2 = parse_eos(ini, "phase2");
  spec.state = parse_state(ini, "state");
  ini.check_consumed({"phase1", "phase2", "state"});
  return spec;
}

RiemannSpec parse_riemann_spec(const std::string& text) {
  const Ini ini(text);
  RiemannSpec spec;
  spec.phase1 = parse_eos(ini, "phase1");
  spec.phase2 = parse_eos(ini, "phase2");
  spec.left = parse_state(ini, "state.left");
  spec.right = parse_state(ini, "state.right");
  const std::string wave = ini.text_or("riemann", "wave", "interface_u");
  const std::map<std::string, WaveId> wave_map = {
      {"interface_u", WaveId::InterfaceU},
      {"contact_1", WaveId::Contact1},
      {"acoustic_1_plus", WaveId::Acoustic1Plus},
      {"acoustic_1_minus", WaveId::Acoustic1Minus},
      {"contact_2", WaveId::Contact2},
      {"acoustic_2_plus", WaveId::Acoustic2Plus},
      {"acoustic_2_minus", WaveId::Acoustic2Minus},
  };
  const auto it = wave_map.find(wave);
  if (it == wave_map.end())
    throw ConfigError("[riemann] wave: unknown wave family '" + wave + "'");
  spec.wave = it->second;
  spec.phase = static_cast<int>(ini.number_or("riemann", "phase", 1));
  if (spec.phase != 1 && spec.phase != 2)
    throw ConfigError("[riemann] phase must be 1 or 2");
  if (ini.find("riemann", "sigma") != nullptr) {
    spec.has_sigma = true;
    spec.sigma = ini.number("riemann", "sigma");
  }
  ini.check_consumed({"phase1", "phase2", "state.left", "state.right", "riemann"});
  return spec;
}

Grid1D build_initial_grid(const Scenario& sc, const StiffenedGas& eos1,
                          const StiffenedGas& eos2) {
  Grid1D grid(sc.n_cells, sc.x_lo, sc.x_hi);
  for (int i = 0; i < sc.n_cells; ++i) {
    const double x = grid.x_center(i);
    MixturePrimitive U;
    if (sc.initial.kind == InitialKind::RiemannPair) {
      U = x < sc.initial.x_split ? sc.initial.left : sc.initial.right;
    } else {
      const double arg = (x - sc.initial.center) / sc.initial.width;
      U.alpha1 = sc.initial.alpha_base + sc.initial.alpha_amp * std::exp(-arg * arg);
      U.phase1 = sc.initial.bg1;
      U.phase2 = sc.initial.bg2;
    }
    grid.set_state(i, prim_to_cons(U, eos1, eos2));
  }
  return grid;
}

}  // namespace twofluid
