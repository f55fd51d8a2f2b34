#pragma once

// Selection of (p, q) = (rho cos eta, rho sin eta) and the Hamiltonian
// constraint Delta lambda + (1/2) udot^2 + (1/2)|grad u|^2 + (1/2)|H|^2 - tau^2/4 = 0.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "s1c/momentum.hpp"

namespace s1c {

struct RhoEta {
  double p = 0.0;
  double q = 0.0;
  double cond = 1.0;  // condition number of the 2x2 selection system
};

// The log coefficient c(p, q) of the momentum source is affine in (p, q), and
// the selection condition is p + i q = -4 c(p, q). Three probes fix the map.
inline RhoEta solve_rho_eta(const DivOperator& op, const SeedData& seed, double alpha, const ScalarField& lambda_tilde,
                            const TensorField& H_tilde, double b) {
  auto c_at = [&](double p, double q) {
    return op.log_coefficient(momentum_source(seed, alpha, lambda_tilde, H_tilde, {b, p, q}));
  };
  const cplx c0 = c_at(0.0, 0.0);
  const cplx cp = c_at(1.0, 0.0) - c0;
  const cplx cq = c_at(0.0, 1.0) - c0;
  const double a11 = 1.0 + 4.0 * cp.real(), a12 = 4.0 * cq.real();
  const double a21 = 4.0 * cp.imag(), a22 = 1.0 + 4.0 * cq.imag();
  const double det = a11 * a22 - a12 * a21;
  // Singular values of a 2x2 matrix from its Frobenius norm and determinant.
  const double fro2 = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double smax = std::sqrt(0.5 * (fro2 + disc));
  const double smin2 = 0.5 * (fro2 - disc);
  const double cond = smin2 > 0.0 ? smax / std::sqrt(smin2) : INFINITY;
  if (!(cond <= 1e8) || det == 0.0)
    throw Error(ErrorKind::NearSingularSelection, "selection system has condition number " + std::to_string(cond));
  const double r1 = -4.0 * c0.real(), r2 = -4.0 * c0.imag();
  RhoEta out;
  out.p = (r1 * a22 - a12 * r2) / det;
  out.q = (a11 * r2 - a21 * r1) / det;
  out.cond = cond;
  return out;
}

inline double rho_of(double p, double q) { return std::hypot(p, q); }
inline double eta_of(double p, double q) {
  if (p == 0.0 && q == 0.0) return 0.0;
  double e = std::atan2(q, p);
  if (e < 0.0) e += 2.0 * std::numbers::pi;
  return e;
}

// Right side of Delta lambda' = rhs after removing the singular squares, which
// cancel identically: (1/2)|H_b + H_{rho,eta}|^2 = tau_sing^2 / 4.
inline ScalarField hamiltonian_rhs(const SeedData& seed, const TensorField& H_tilde, const SingularParams& s) {
  seed.udot.check(H_tilde.h11);
  const GridPtr& g = seed.udot.grid_ptr();
  const int N = g->N, M = g->M;
  const auto [u1, u2] = cartesian_gradient(seed.u);
  const auto S_ud = seed.udot.samples(), S_u1 = u1.samples(), S_u2 = u2.samples();
  const auto S_t = seed.tau_tilde.samples();
  const auto S_h11 = H_tilde.h11.samples(), S_h12 = H_tilde.h12.samples();
  std::vector<double> out(N * M);
  for (int n = 0; n < N; ++n) {
    const double r = g->r[n];
    for (int m = 0; m < M; ++m) {
      const int i = n * M + m;
      const double th = g->theta(m), x = r * std::cos(th), y = r * std::sin(th);
      const auto Hs = h_sing(s, x, y);
      const double ts = tau_sing(s, x, y);
      const double cross = 2.0 * (Hs.h11 * S_h11[i] + Hs.h12 * S_h12[i]);
      const double sq = 2.0 * (S_h11[i] * S_h11[i] + S_h12[i] * S_h12[i]);
      out[i] = -0.5 * S_ud[i] * S_ud[i] - 0.5 * (S_u1[i] * S_u1[i] + S_u2[i] * S_u2[i]) - (cross + 0.5 * sq) +
               0.25 * (2.0 * ts * S_t[i] + S_t[i] * S_t[i]);
    }
  }
  return ScalarField::from_samples(g, out);
}

struct LambdaUpdate {
  double alpha = 0.0;
  ScalarField lambda_tilde;
};

// lambda' = -alpha' chi ln r + lambda~', so alpha' = -c_log.
inline LambdaUpdate solve_lambda(const ScalarField& rhs) {
  auto sol = poisson_solve(rhs);
  return {0.0 - sol.c_log, std::move(sol.v)};  // +0 rather than -0 for a zero source
}

// Hamiltonian residual on nodes 0..N-2 with the full lambda, H and tau.
inline ScalarField hamiltonian_residual(const SeedData& seed, double alpha, const ScalarField& lambda_tilde,
                                        const TensorField& H_tilde, const SingularParams& s) {
  const GridPtr& g = seed.udot.grid_ptr();
  const int N = g->N, M = g->M;
  const auto sing = singular_tensors(s, g);
  const TensorField H = sing.H_b + sing.H_rho_eta + H_tilde;
  const ScalarField tau = sing.tau_sing + seed.tau_tilde;
  const auto [u1, u2] = cartesian_gradient(seed.u);
  const auto S_ud = seed.udot.samples(), S_u1 = u1.samples(), S_u2 = u2.samples();
  const auto S_t = tau.samples(), S_h11 = H.h11.samples(), S_h12 = H.h12.samples();
  std::vector<double> src(N * M);
  for (size_t i = 0; i < src.size(); ++i)
    src[i] = 0.5 * S_ud[i] * S_ud[i] + 0.5 * (S_u1[i] * S_u1[i] + S_u2[i] * S_u2[i]) +
             (S_h11[i] * S_h11[i] + S_h12[i] * S_h12[i]) - 0.25 * S_t[i] * S_t[i];
  ScalarField R = laplacian(lambda_full(alpha, lambda_tilde));
  R += ScalarField::from_samples(g, src);
  for (int k = 0; k <= g->K; ++k) {
    R.a(k, N - 1) = 0.0;
    R.b(k, N - 1) = 0.0;
  }
  return R;
}

}  // namespace s1c
