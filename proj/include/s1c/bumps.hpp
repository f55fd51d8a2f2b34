#pragma once

// Gaussian bump descriptions of seed data and their sampling onto a grid.

#include <cmath>
#include <string>
#include <vector>

#include "s1c/error.hpp"
#include "s1c/field.hpp"

namespace s1c {

struct Bump {
  double amp = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double w = 1.0;
};

inline double eval_bumps(const std::vector<Bump>& bumps, double x, double y) {
  double v = 0.0;
  for (const auto& b : bumps) {
    const double dx = x - b.x0, dy = y - b.y0;
    v += b.amp * std::exp(-(dx * dx + dy * dy) / (b.w * b.w));
  }
  return v;
}

inline ScalarField sample_analytic(const std::vector<Bump>& bumps, const GridPtr& g) {
  for (const auto& b : bumps) {
    if (b.amp == 0.0) continue;
    const double rc = std::hypot(b.x0, b.y0);
    // Local radial spacing dr = h (1 + r).
    const double dr = g->h * (1.0 + rc);
    if (!(b.w >= 4.0 * dr))
      throw Error(ErrorKind::UnresolvedSpec, "bump width " + std::to_string(b.w) +
                                                 " is below 4 radial spacings (" + std::to_string(4.0 * dr) + ")");
  }
  return sample_function(g, [&](double x, double y) { return eval_bumps(bumps, x, y); });
}

}  // namespace s1c
