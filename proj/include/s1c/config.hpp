#pragma once

// Run configuration: an INI-like text document.
//
//   [grid]            K, N_r, R_max (required); delta (default -0.5)
//   [seed]            udot|u|tau = gauss amp=<a> x0=<x> y0=<y> w=<w>  (repeatable)
//                     b = <real> (default 0)
//   [solver]          tol_fixed_point, max_iter, epsilon_threshold
//   [output]          dir
//
// '#' starts a comment. Environment overrides: SOLVER_MAX_ITER, SOLVER_TOL.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "s1c/bumps.hpp"
#include "s1c/picard.hpp"

namespace s1c {

struct RunConfig {
  int K = 0;
  int N_r = 0;
  double R_max = 0.0;
  double delta = -0.5;
  std::vector<Bump> udot, u, tau;
  double b = 0.0;
  SolverOptions solver;
  std::string output_dir = "s1c_out";

  bool operator==(const RunConfig& o) const {
    auto same = [](const std::vector<Bump>& x, const std::vector<Bump>& y) {
      if (x.size() != y.size()) return false;
      for (size_t i = 0; i < x.size(); ++i)
        if (x[i].amp != y[i].amp || x[i].x0 != y[i].x0 || x[i].y0 != y[i].y0 || x[i].w != y[i].w) return false;
      return true;
    };
    return K == o.K && N_r == o.N_r && R_max == o.R_max && delta == o.delta && same(udot, o.udot) &&
           same(u, o.u) && same(tau, o.tau) && b == o.b && solver.tol_fixed_point == o.solver.tol_fixed_point &&
           solver.max_iter == o.solver.max_iter && solver.epsilon_threshold == o.solver.epsilon_threshold &&
           output_dir == o.output_dir;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double to_real(const std::string& v, int line) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected a real number, got '" + t + "'");
  return x;
}

inline int to_int(const std::string& v, int line) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE || x < -1000000000L || x > 1000000000L)
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected an integer, got '" + t + "'");
  return static_cast<int>(x);
}

inline Bump parse_bump(const std::string& v, int line) {
  std::istringstream in(v);
  std::string word;
  in >> word;
  if (word != "gauss")
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected 'gauss', got '" + word + "'");
  Bump b;
  bool seen[4] = {false, false, false, false};
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected key=value, got '" + word + "'");
    const std::string k = word.substr(0, eq);
    const double x = to_real(word.substr(eq + 1), line);
    int idx = -1;
    if (k == "amp") b.amp = x, idx = 0;
    else if (k == "x0") b.x0 = x, idx = 1;
    else if (k == "y0") b.y0 = x, idx = 2;
    else if (k == "w") b.w = x, idx = 3;
    else throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": unknown bump key '" + k + "'");
    seen[idx] = true;
  }
  for (int i = 0; i < 4; ++i)
    if (!seen[i])
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bump needs amp, x0, y0 and w");
  return b;
}

}  // namespace detail

inline void validate(const RunConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::ValidationError, m); };
  if (!(c.delta > -1.0 && c.delta < 0.0)) fail("delta must lie in (-1,0)");
  if (c.K < 4) fail("K must be at least 4");
  if (c.N_r < 16) fail("N_r must be at least 16");
  if (!(c.R_max > 0.0)) fail("R_max must be positive");
  if (!(c.solver.tol_fixed_point > 0.0)) fail("tol_fixed_point must be positive");
  if (c.solver.max_iter < 1) fail("max_iter must be at least 1");
  if (!(c.solver.epsilon_threshold > 0.0)) fail("epsilon_threshold must be positive");
  for (const auto* list : {&c.udot, &c.u, &c.tau})
    for (const auto& b : *list)
      if (!(b.w > 0.0)) fail("bump width w must be positive");
  if (c.output_dir.empty()) fail("output dir must not be empty");
}

inline RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  bool has_grid = false, has_K = false, has_N = false, has_R = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": malformed section");
      section = detail::trim(s.substr(1, s.size() - 2));
      if (section != "grid" && section != "seed" && section != "solver" && section != "output")
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": unknown section [" + section + "]");
      if (section == "grid") has_grid = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected key = value");
    const std::string key = detail::trim(s.substr(0, eq)), val = detail::trim(s.substr(eq + 1));
    auto unknown = [&] {
      return Error(ErrorKind::ParseError,
                   "line " + std::to_string(line) + ": unknown key '" + key + "' in [" + section + "]");
    };
    if (section.empty()) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": key outside a section");
    if (section == "grid") {
      if (key == "K") c.K = detail::to_int(val, line), has_K = true;
      else if (key == "N_r") c.N_r = detail::to_int(val, line), has_N = true;
      else if (key == "R_max") c.R_max = detail::to_real(val, line), has_R = true;
      else if (key == "delta") c.delta = detail::to_real(val, line);
      else throw unknown();
    } else if (section == "seed") {
      if (key == "udot") c.udot.push_back(detail::parse_bump(val, line));
      else if (key == "u") c.u.push_back(detail::parse_bump(val, line));
      else if (key == "tau") c.tau.push_back(detail::parse_bump(val, line));
      else if (key == "b") c.b = detail::to_real(val, line);
      else throw unknown();
    } else if (section == "solver") {
      if (key == "tol_fixed_point") c.solver.tol_fixed_point = detail::to_real(val, line);
      else if (key == "max_iter") c.solver.max_iter = detail::to_int(val, line);
      else if (key == "epsilon_threshold") c.solver.epsilon_threshold = detail::to_real(val, line);
      else throw unknown();
    } else {
      if (key == "dir") c.output_dir = val;
      else throw unknown();
    }
  }
  if (!has_grid) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": missing [grid] section");
  if (!has_K || !has_N || !has_R)
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": [grid] needs K, N_r and R_max");
  validate(c);
  return c;
}

inline std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  o << "[grid]\nK = " << c.K << "\nN_r = " << c.N_r << "\nR_max = " << fmt_real(c.R_max)
    << "\ndelta = " << fmt_real(c.delta) << "\n\n[seed]\n";
  auto bumps = [&](const char* name, const std::vector<Bump>& list) {
    for (const auto& b : list)
      o << name << " = gauss amp=" << fmt_real(b.amp) << " x0=" << fmt_real(b.x0) << " y0=" << fmt_real(b.y0)
        << " w=" << fmt_real(b.w) << "\n";
  };
  bumps("udot", c.udot);
  bumps("u", c.u);
  bumps("tau", c.tau);
  o << "b = " << fmt_real(c.b) << "\n\n[solver]\ntol_fixed_point = " << fmt_real(c.solver.tol_fixed_point)
    << "\nmax_iter = " << c.solver.max_iter << "\nepsilon_threshold = " << fmt_real(c.solver.epsilon_threshold)
    << "\n\n[output]\ndir = " << c.output_dir << "\n";
  return o.str();
}

inline void apply_env_overrides(RunConfig& c) {
  if (const char* v = std::getenv("SOLVER_MAX_ITER")) {
    try {
      c.solver.max_iter = detail::to_int(v, 0);
    } catch (const Error&) {
      throw Error(ErrorKind::ValidationError, std::string("SOLVER_MAX_ITER is not an integer: ") + v);
    }
  }
  if (const char* v = std::getenv("SOLVER_TOL")) {
    try {
      c.solver.tol_fixed_point = detail::to_real(v, 0);
    } catch (const Error&) {
      throw Error(ErrorKind::ValidationError, std::string("SOLVER_TOL is not a real number: ") + v);
    }
  }
  validate(c);
}

inline GridPtr grid_of(const RunConfig& c) { return build_grid(c.K, c.N_r, c.R_max, c.delta); }

// Seed with u and udot scaled by a and tau~, b by a^2.
inline SeedData seed_of(const RunConfig& c, const GridPtr& g, double a = 1.0) {
  auto scaled = [](std::vector<Bump> v, double s) {
    for (auto& b : v) b.amp *= s;
    return v;
  };
  return make_seed(sample_analytic(scaled(c.udot, a), g), sample_analytic(scaled(c.u, a), g),
                   sample_analytic(scaled(c.tau, a * a), g), c.b * a * a);
}

}  // namespace s1c
