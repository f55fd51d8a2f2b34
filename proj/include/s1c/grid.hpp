#pragma once

// Mapped radial grid s = ln(1 + r), uniform in s, times an angular sampling of
// M = 4K points used for dealiased products.

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "s1c/closed_forms.hpp"
#include "s1c/error.hpp"

namespace s1c {

using RadialProfile = std::vector<double>;

struct Grid {
  int K = 0;
  int N = 0;
  int M = 0;
  double R = 0.0;
  double delta = 0.0;
  double h = 0.0;

  // Nodes n = 0..N-1 sit at s = (n+1)h; the origin is s = 0.
  std::vector<double> r, J;
  // Half nodes hn = 0..N sit at s = (hn + 1/2)h; hn = N is an outer ghost.
  std::vector<double> rh, Jh;
  // Plane quadrature weights (2 pi included): integral f = sum w[n] a0[n].
  std::vector<double> w;
  // Half-node weights, 2 pi rh[hn] (r[hn] - r[hn-1]) with r[-1] = 0.
  std::vector<double> wh;
  // Even extrapolation to r = 0: f(0) ~ ext0 f[0] + ext1 f[1].
  double ext0 = 0.0, ext1 = 0.0;
  // Angular tables cos(k theta_m), sin(k theta_m), index k*M + m.
  std::vector<double> ct, st;

  double theta(int m) const { return 2.0 * std::numbers::pi * m / M; }
  bool same_as(const Grid& o) const {
    return K == o.K && N == o.N && R == o.R && delta == o.delta;
  }
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr build_grid(int K, int N, double R, double delta) {
  if (!(delta > -1.0 && delta < 0.0))
    throw Error(ErrorKind::DeltaOutOfRange, "delta must lie in (-1,0), got " + std::to_string(delta));
  if (K < 4) throw Error(ErrorKind::InvalidResolution, "K must be at least 4");
  if (N < 16) throw Error(ErrorKind::InvalidResolution, "N_r must be at least 16");
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorKind::InvalidResolution, "R_max must be positive");

  auto g = std::make_shared<Grid>();
  g->K = K;
  g->N = N;
  g->M = 4 * K;
  g->R = R;
  g->delta = delta;
  g->h = std::log1p(R) / N;
  const double h = g->h;

  g->r.resize(N);
  g->J.resize(N);
  for (int n = 0; n < N; ++n) {
    const double s = (n + 1) * h;
    g->r[n] = std::expm1(s);
    g->J[n] = std::exp(s);
  }
  g->r[N - 1] = R;
  g->J[N - 1] = 1.0 + R;

  g->rh.resize(N + 1);
  g->Jh.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    const double s = (i + 0.5) * h;
    g->rh[i] = std::expm1(s);
    g->Jh[i] = std::exp(s);
  }

  // The first cell is the disk of radius rh[1]; the last cell is a half cell.
  const double pi = std::numbers::pi;
  g->w.resize(N);
  g->w[0] = pi * g->rh[1] * g->rh[1];
  for (int n = 1; n < N; ++n) g->w[n] = 2.0 * pi * h * g->r[n] * g->J[n];
  g->w[N - 1] *= 0.5;

  g->wh.resize(N);
  for (int i = 0; i < N; ++i) {
    const double left = i == 0 ? 0.0 : g->r[i - 1];
    g->wh[i] = 2.0 * pi * g->rh[i] * (g->r[i] - left);
  }

  const double r0 = g->r[0], r1 = g->r[1];
  g->ext0 = r1 * r1 / (r1 * r1 - r0 * r0);
  g->ext1 = -r0 * r0 / (r1 * r1 - r0 * r0);

  const int M = g->M;
  g->ct.resize((K + 1) * M);
  g->st.resize((K + 1) * M);
  for (int k = 0; k <= K; ++k)
    for (int m = 0; m < M; ++m) {
      // Reduce k*m mod M first so the tables are exact at symmetric angles.
      const double t = 2.0 * pi * ((k * m) % M) / M;
      g->ct[k * M + m] = std::cos(t);
      g->st[k * M + m] = std::sin(t);
    }
  return g;
}

struct ChiProfiles {
  RadialProfile chi, chi_prime, chi_log;
};

inline ChiProfiles chi_profiles(const Grid& g) {
  ChiProfiles c;
  c.chi.resize(g.N);
  c.chi_prime.resize(g.N);
  c.chi_log.resize(g.N);
  for (int n = 0; n < g.N; ++n) {
    c.chi[n] = chi(g.r[n]);
    c.chi_prime[n] = s1c::chi_prime(g.r[n]);
    c.chi_log[n] = chi_log(g.r[n]);
  }
  return c;
}

}  // namespace s1c
