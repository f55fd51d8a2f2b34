#pragma once

// Field dumps: CSV with header "k,kind,r_1,...,r_N" and one row per
// coefficient profile, values printed with 17 significant digits.

#include <fstream>
#include <sstream>
#include <string>

#include "s1c/config.hpp"
#include "s1c/field.hpp"

namespace s1c {

inline void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  const Grid& g = f.grid();
  out << "k,kind";
  for (int n = 0; n < g.N; ++n) out << ',' << fmt_real(g.r[n]);
  out << '\n';
  for (int k = 0; k <= g.K; ++k) {
    for (int kind = 0; kind < 2; ++kind) {
      if (kind == 1 && k == 0) continue;
      out << k << ',' << (kind == 0 ? "cos" : "sin");
      for (int n = 0; n < g.N; ++n) out << ',' << fmt_real(kind == 0 ? f.a(k, n) : f.b(k, n));
      out << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path);
}

inline ScalarField read_field_csv(const std::string& path, const GridPtr& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  ScalarField f(g);
  std::string line;
  std::getline(in, line);  // header
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    const int k = detail::to_int(cell, lineno);
    std::getline(row, cell, ',');
    const bool is_sin = cell == "sin";
    if (k < 0 || k > g->K || (!is_sin && cell != "cos"))
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad mode label");
    for (int n = 0; n < g->N; ++n) {
      if (!std::getline(row, cell, ','))
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": too few values");
      const double x = detail::to_real(cell, lineno);
      if (is_sin) f.b(k, n) = x;
      else f.a(k, n) = x;
    }
  }
  return f;
}

}  // namespace s1c
