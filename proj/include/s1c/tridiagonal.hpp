#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "s1c/error.hpp"

namespace s1c {

// Rows i = 0..n-1 with lo[i] x[i-1] + di[i] x[i] + up[i] x[i+1] = rhs[i].
struct Tridiagonal {
  std::vector<double> lo, di, up;

  explicit Tridiagonal(int n = 0) : lo(n, 0.0), di(n, 0.0), up(n, 0.0) {}
  int size() const { return static_cast<int>(di.size()); }

  // Thomas algorithm; rhs is overwritten with the solution.
  void solve(std::vector<double>& x) const {
    const int n = size();
    std::vector<double> c(n);
    double piv = di[0];
    if (piv == 0.0 || !std::isfinite(piv)) throw Error(ErrorKind::SingularSystem, "zero pivot in row 0");
    c[0] = up[0] / piv;
    x[0] /= piv;
    for (int i = 1; i < n; ++i) {
      piv = di[i] - lo[i] * c[i - 1];
      if (piv == 0.0 || !std::isfinite(piv))
        throw Error(ErrorKind::SingularSystem, "zero pivot in row " + std::to_string(i));
      c[i] = up[i] / piv;
      x[i] = (x[i] - lo[i] * x[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    const int n = size();
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double v = di[i] * x[i];
      if (i > 0) v += lo[i] * x[i - 1];
      if (i + 1 < n) v += up[i] * x[i + 1];
      y[i] = v;
    }
    return y;
  }
};

}  // namespace s1c
