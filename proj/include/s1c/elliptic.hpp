#pragma once

// Poisson solver on the plane, mode by mode, returning u = c chi(r) ln r + v
// with c = (1/2pi) integral f and v decaying.
//
// The radial operator is conservative: fluxes live on half nodes and the cell
// volumes equal the quadrature weights, so the discrete mass of L_0 v
// telescopes to the outer boundary flux. For mode 0 the first cell is the
// disk of radius rh[1]; for k >= 1 the origin value is 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "s1c/field.hpp"
#include "s1c/tridiagonal.hpp"

namespace s1c {

// Rows 0..N-2 discretize v'' + v'/r - k^2 v / r^2; row N-1 is the decaying
// Robin condition v' + (p/r) v = 0, p = max(k, 1).
inline Tridiagonal scalar_mode_operator(const Grid& g, int k) {
  const int N = g.N;
  const double h = g.h;
  auto cf = [&](int i) { return g.rh[i] / g.Jh[i] / h; };
  Tridiagonal A(N);
  for (int n = 0; n < N - 1; ++n) {
    const double cr = cf(n + 1);
    double cl = cf(n);
    double V = h * g.r[n] * g.J[n];
    if (n == 0 && k == 0) {
      cl = 0.0;
      V = 0.5 * g.rh[1] * g.rh[1];
    }
    A.di[n] = -(cr + cl) / V - double(k) * k / (g.r[n] * g.r[n]);
    A.up[n] = cr / V;
    if (n > 0) A.lo[n] = cl / V;
  }
  const double p = std::max(k, 1);
  const double dr = g.r[N - 1] - g.r[N - 2];
  const double half = 0.5 * p / g.rh[N - 1];
  A.lo[N - 1] = -1.0 / dr + half;
  A.di[N - 1] = 1.0 / dr + half;
  return A;
}

// Applies the PDE rows of the mode-k operator; the last (boundary) row is 0.
inline std::vector<double> apply_mode(const Tridiagonal& A, const double* v, int N) {
  std::vector<double> y(N, 0.0);
  for (int n = 0; n < N - 1; ++n) {
    double s = A.di[n] * v[n] + A.up[n] * v[n + 1];
    if (n > 0) s += A.lo[n] * v[n - 1];
    y[n] = s;
  }
  return y;
}

// Discrete Laplacian of a field; the outermost node carries the boundary row
// and is reported as 0.
inline ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for (int k = 0; k <= g.K; ++k) {
    const auto A = scalar_mode_operator(g, k);
    const auto ya = apply_mode(A, &f.cos_data()[k * g.N], g.N);
    for (int n = 0; n < g.N; ++n) out.a(k, n) = ya[n];
    if (k == 0) continue;
    const auto yb = apply_mode(A, &f.sin_data()[k * g.N], g.N);
    for (int n = 0; n < g.N; ++n) out.b(k, n) = yb[n];
  }
  return out;
}

// chi(r) ln r as a mode-0 field.
inline ScalarField chi_log_field(const GridPtr& g) { return radial_field(g, chi_profiles(*g).chi_log); }

struct PoissonSolution {
  double c_log = 0.0;
  ScalarField v;

  ScalarField total() const {
    ScalarField u = v;
    const auto cl = chi_profiles(v.grid());
    for (int n = 0; n < v.grid().N; ++n) u.a(0, n) += c_log * cl.chi_log[n];
    return u;
  }
};

// Rejects right-hand sides whose mode-0 tail is both non-negligible and
// decaying no faster than r^-2 on the outer quarter of the grid.
inline void check_decay(const ScalarField& f) {
  const Grid& g = f.grid();
  const int N = g.N;
  double scale = 0.0;
  for (int n = 0; n < N; ++n) scale = std::max(scale, std::abs(f.a(0, n)) * (1.0 + g.r[n] * g.r[n]));
  if (scale == 0.0) return;
  const int q = (3 * N) / 4;
  const double fq = std::abs(f.a(0, q)), fN = std::abs(f.a(0, N - 1));
  const double tail = std::max(fq * g.r[q] * g.r[q], fN * g.r[N - 1] * g.r[N - 1]);
  if (tail <= 1e-8 * scale) return;
  if (fq > 0.0 && fN > 0.0) {
    const double slope = std::log(fN / fq) / std::log(g.r[N - 1] / g.r[q]);
    if (slope < -2.0) return;
  }
  throw Error(ErrorKind::NonDecayingRHS, "mode-0 tail of the source does not decay faster than r^-2");
}

inline PoissonSolution poisson_solve(const ScalarField& f) {
  if (!f.finite()) throw Error(ErrorKind::NonDecayingRHS, "source is not finite");
  check_decay(f);
  const GridPtr& gp = f.grid_ptr();
  const Grid& g = *gp;
  const int N = g.N;
  PoissonSolution sol;
  sol.v = ScalarField(gp);
  sol.c_log = integrate(f) / (2.0 * std::numbers::pi);
  const auto cl = chi_profiles(g).chi_log;

  for (int k = 0; k <= g.K; ++k) {
    const auto A = scalar_mode_operator(g, k);
    std::vector<double> x(f.cos_data().begin() + k * N, f.cos_data().begin() + (k + 1) * N);
    if (k == 0) {
      const auto Lc = apply_mode(A, cl.data(), N);
      for (int n = 0; n < N - 1; ++n) x[n] -= sol.c_log * Lc[n];
    }
    x[N - 1] = 0.0;
    A.solve(x);
    for (int n = 0; n < N; ++n) sol.v.a(k, n) = x[n];
    if (k == 0) continue;
    std::vector<double> y(f.sin_data().begin() + k * N, f.sin_data().begin() + (k + 1) * N);
    y[N - 1] = 0.0;
    A.solve(y);
    for (int n = 0; n < N; ++n) sol.v.b(k, n) = y[n];
  }
  return sol;
}

// L(c chi ln r + v) - f on the PDE rows; the boundary node is 0.
inline ScalarField poisson_residual(const PoissonSolution& s, const ScalarField& f) {
  ScalarField r = laplacian(s.total());
  r -= f;
  const int N = f.grid().N;
  for (int k = 0; k <= f.grid().K; ++k) {
    r.a(k, N - 1) = 0.0;
    r.b(k, N - 1) = 0.0;
  }
  return r;
}

// (1/2pi) integral ln|x - y| f(y) dy at the given points, by the angular
// expansion of the logarithm and the plane quadrature in r. Test oracle only.
inline std::vector<double> greens_convolution_oracle(const ScalarField& f,
                                                     const std::vector<std::pair<double, double>>& pts) {
  const Grid& g = f.grid();
  const double twopi = 2.0 * std::numbers::pi;
  std::vector<double> out;
  out.reserve(pts.size());
  for (auto [x, y] : pts) {
    const double rho = std::hypot(x, y), phi = std::atan2(y, x);
    double u = 0.0;
    for (int n = 0; n < g.N; ++n) {
      const double r = g.r[n];
      const double wr = g.w[n] / twopi;  // w = 2 pi r dr
      const double big = std::max(rho, r), small = std::min(rho, r);
      u += wr * std::log(big) * f.a(0, n);
      const double t = small / big;
      double tk = 1.0;
      for (int k = 1; k <= g.K; ++k) {
        tk *= t;
        u -= wr * tk / (2.0 * k) * (f.a(k, n) * std::cos(k * phi) + f.b(k, n) * std::sin(k * phi));
      }
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace s1c
