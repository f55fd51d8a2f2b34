#pragma once

// Momentum constraint d_i H_ij + H_ij d_i lambda = -udot d_j u + (1/2) d_j tau
// - (1/2) tau d_j lambda, split into a part driven by the data and state, a
// part driven by b, and a part driven by (p, q). The 1/r profiles H_b and the
// 3-theta part of H_{rho,eta} stay closed-form; only decaying corrections are
// discretized.

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "s1c/bumps.hpp"
#include "s1c/elliptic.hpp"
#include "s1c/staggered.hpp"

namespace s1c {

struct SeedData {
  ScalarField udot, u, tau_tilde;
  double b = 0.0;
  double epsilon = 0.0;
};

// epsilon = integral of udot^2 + |grad u|^2.
inline double seed_epsilon(const ScalarField& udot, const ScalarField& u) {
  auto [u1, u2] = cartesian_gradient(u);
  auto s = udot.samples();
  const auto s1 = u1.samples(), s2 = u2.samples();
  for (size_t i = 0; i < s.size(); ++i) s[i] = s[i] * s[i] + s1[i] * s1[i] + s2[i] * s2[i];
  return integrate(ScalarField::from_samples(udot.grid_ptr(), s));
}

inline SeedData make_seed(ScalarField udot, ScalarField u, ScalarField tau_tilde, double b) {
  udot.check(u);
  udot.check(tau_tilde);
  SeedData s{std::move(udot), std::move(u), std::move(tau_tilde), b, 0.0};
  s.epsilon = seed_epsilon(s.udot, s.u);
  return s;
}

inline SeedData zero_seed(const GridPtr& g) { return make_seed(ScalarField(g), ScalarField(g), ScalarField(g), 0.0); }

struct SingularFields {
  TensorField H_b, H_rho_eta;
  ScalarField tau_sing;
};

inline TensorField sample_tensor(const GridPtr& g, Tensor2<double> (*fn)(double, double, const double&, const double&),
                                 double p, double q) {
  auto a = sample_function(g, [&](double x, double y) { return fn(p, q, x, y).h11; });
  auto b = sample_function(g, [&](double x, double y) { return fn(p, q, x, y).h12; });
  return {std::move(a), std::move(b)};
}

inline TensorField sample_h_b(const GridPtr& g, double b) {
  auto a = sample_function(g, [&](double x, double y) { return h_b(b, x, y).h11; });
  auto c = sample_function(g, [&](double x, double y) { return h_b(b, x, y).h12; });
  return {std::move(a), std::move(c)};
}
inline TensorField sample_h_rho_1(const GridPtr& g, double p, double q) {
  return sample_tensor(g, &h_rho_1<double>, p, q);
}
inline TensorField sample_h_rho_3(const GridPtr& g, double p, double q) {
  return sample_tensor(g, &h_rho_3<double>, p, q);
}

inline SingularFields singular_tensors(const SingularParams& s, const GridPtr& g) {
  SingularFields out;
  out.H_b = sample_h_b(g, s.b);
  out.H_rho_eta = sample_h_rho_1(g, s.p, s.q) + sample_h_rho_3(g, s.p, s.q);
  out.tau_sing = sample_function(g, [&](double x, double y) { return tau_sing(s, x, y); });
  return out;
}

// The m-part (chi/r) Re/Im(c e^{i theta}) of a log coefficient c.
inline TensorField m_part(const GridPtr& g, cplx c) {
  TensorField H(g);
  for (int n = 0; n < g->N; ++n) {
    const double a = chi(g->r[n]) / g->r[n];
    H.h11.a(1, n) = a * c.real();
    H.h11.b(1, n) = -a * c.imag();
    H.h12.a(1, n) = a * c.imag();
    H.h12.b(1, n) = a * c.real();
  }
  return H;
}

// Pointwise (H grad l): ((H grad l)_1, (H grad l)_2) from physical samples.
inline void h_dot_grad(double h11, double h12, double l1, double l2, double& o1, double& o2) {
  o1 = h11 * l1 + h12 * l2;
  o2 = h12 * l1 - h11 * l2;
}

inline ScalarField lambda_full(double alpha, const ScalarField& lambda_tilde) {
  ScalarField l = lambda_tilde;
  const auto cl = chi_profiles(l.grid()).chi_log;
  for (int n = 0; n < l.grid().N; ++n) l.a(0, n) -= alpha * cl[n];
  return l;
}

// The data/state-driven source at nodes:
// f = -udot grad u + (1/2) grad tau~ - (1/2) tau~ grad lambda - H~ grad lambda
//     + (chi'/4r)(p, q) - grad lambda~ . H_sing - (1/2) tau_sing grad lambda~.
inline std::pair<ScalarField, ScalarField> momentum_rhs_f(const SeedData& seed, double alpha,
                                                          const ScalarField& lambda_tilde, const TensorField& H_tilde,
                                                          const SingularParams& s) {
  seed.udot.check(lambda_tilde);
  seed.udot.check(H_tilde.h11);
  const GridPtr& g = seed.udot.grid_ptr();
  const int N = g->N, M = g->M;
  const auto [u1, u2] = cartesian_gradient(seed.u);
  const auto [t1, t2] = cartesian_gradient(seed.tau_tilde);
  const auto [l1, l2] = cartesian_gradient(lambda_full(alpha, lambda_tilde));
  const auto [lt1, lt2] = cartesian_gradient(lambda_tilde);
  const auto S_ud = seed.udot.samples(), S_u1 = u1.samples(), S_u2 = u2.samples();
  const auto S_t = seed.tau_tilde.samples(), S_t1 = t1.samples(), S_t2 = t2.samples();
  const auto S_l1 = l1.samples(), S_l2 = l2.samples(), S_lt1 = lt1.samples(), S_lt2 = lt2.samples();
  const auto S_h11 = H_tilde.h11.samples(), S_h12 = H_tilde.h12.samples();
  std::vector<double> f1(N * M), f2(N * M);
  for (int n = 0; n < N; ++n) {
    const double r = g->r[n];
    const double src = chi_prime(r) / (4.0 * r);
    for (int m = 0; m < M; ++m) {
      const int i = n * M + m;
      const double th = g->theta(m), x = r * std::cos(th), y = r * std::sin(th);
      const auto Hs = h_sing(s, x, y);
      const double ts = tau_sing(s, x, y);
      double a1, a2, c1, c2;
      h_dot_grad(S_h11[i], S_h12[i], S_l1[i], S_l2[i], a1, a2);
      h_dot_grad(Hs.h11, Hs.h12, S_lt1[i], S_lt2[i], c1, c2);
      f1[i] = -S_ud[i] * S_u1[i] + 0.5 * S_t1[i] - 0.5 * S_t[i] * S_l1[i] - a1 + src * s.p - c1 - 0.5 * ts * S_lt1[i];
      f2[i] = -S_ud[i] * S_u2[i] + 0.5 * S_t2[i] - 0.5 * S_t[i] * S_l2[i] - a2 + src * s.q - c2 - 0.5 * ts * S_lt2[i];
    }
  }
  return {ScalarField::from_samples(g, f1), ScalarField::from_samples(g, f2)};
}

// Half-node source of the b-driven correction: I((1/2) grad tau_b) - D-(H_b).
inline ComplexModes source_h2(double b, const GridPtr& g) {
  const auto tb = sample_function(g, [&](double x, double y) { return tau_b(b, x, y); });
  auto [g1, g2] = cartesian_gradient(tb);
  g1 *= 0.5;
  g2 *= 0.5;
  auto G = interp_to_half(to_complex(g1, g2), *g);
  G -= divergence(sample_h_b(g, b));
  return G;
}

// Half-node source of the (p,q)-driven correction:
// I((1/2) grad tau_rho - (chi'/4r)(p, q)) - D-(3-theta part of H_{rho,eta}).
inline ComplexModes source_h3(double p, double q, const GridPtr& g) {
  const auto tr = sample_function(g, [&](double x, double y) { return tau_rho(p, q, x, y); });
  auto [g1, g2] = cartesian_gradient(tr);
  g1 *= 0.5;
  g2 *= 0.5;
  for (int n = 0; n < g->N; ++n) {
    const double src = chi_prime(g->r[n]) / (4.0 * g->r[n]);
    g1.a(0, n) -= src * p;
    g2.a(0, n) -= src * q;
  }
  auto G = interp_to_half(to_complex(g1, g2), *g);
  G -= divergence(sample_h_rho_3(g, p, q));
  return G;
}

struct DivSolveOutput {
  double m = 0.0;
  double phi = 0.0;
  cplx c = 0.0;
  TensorField K_tilde;
};

// Solves D- K = G mode by mode; returns the log coefficient c = m e^{i phi}
// and K minus its leading part (m chi / r)(cos(theta+phi), sin(theta+phi)).
inline DivSolveOutput div_constraint_solve(const DivOperator& op, const ComplexModes& G) {
  const auto res = op.solve(G);
  DivSolveOutput out;
  out.c = res.c;
  out.m = std::abs(res.c);
  out.phi = out.m == 0.0 ? 0.0 : std::atan2(res.c.imag(), res.c.real());
  if (out.phi < 0.0) out.phi += 2.0 * std::numbers::pi;
  out.K_tilde = to_tensor(res.Ktot, op.grid_ptr());
  out.K_tilde -= m_part(op.grid_ptr(), res.c);
  return out;
}

inline DivSolveOutput div_constraint_solve(const DivOperator& op, const ScalarField& f1, const ScalarField& f2) {
  return div_constraint_solve(op, interp_to_half(to_complex(f1, f2), op.grid()));
}

inline TensorField correction_h2(const DivOperator& op, double b) {
  return div_constraint_solve(op, source_h2(b, op.grid_ptr())).K_tilde;
}

inline TensorField correction_h3(const DivOperator& op, const SingularParams& s) {
  return div_constraint_solve(op, source_h3(s.p, s.q, op.grid_ptr())).K_tilde;
}

// Total half-node source of the momentum split at (b, p, q).
inline ComplexModes momentum_source(const SeedData& seed, double alpha, const ScalarField& lambda_tilde,
                                    const TensorField& H_tilde, const SingularParams& s) {
  const GridPtr& g = seed.udot.grid_ptr();
  const auto [f1, f2] = momentum_rhs_f(seed, alpha, lambda_tilde, H_tilde, s);
  auto G = interp_to_half(to_complex(f1, f2), *g);
  G += source_h2(s.b, g);
  G += source_h3(s.p, s.q, g);
  return G;
}

struct MomentumOutput {
  double m = 0.0;
  double phi = 0.0;
  cplx c = 0.0;
  TensorField H_tilde;
};

inline MomentumOutput assemble_momentum(const DivOperator& op, const SeedData& seed, double alpha,
                                        const ScalarField& lambda_tilde, const TensorField& H_tilde_in,
                                        const SingularParams& s) {
  const auto d = div_constraint_solve(op, momentum_source(seed, alpha, lambda_tilde, H_tilde_in, s));
  return {d.m, d.phi, d.c, d.K_tilde};
}

// Momentum residual D-(H) - I(F) at half nodes, with the full H = H_sing + H~,
// tau = tau_sing + tau~, lambda = -alpha chi ln r + lambda~.
inline ComplexModes momentum_residual(const SeedData& seed, double alpha, const ScalarField& lambda_tilde,
                                      const TensorField& H_tilde, const SingularParams& s) {
  const GridPtr& g = seed.udot.grid_ptr();
  const int N = g->N, M = g->M;
  const auto sing = singular_tensors(s, g);
  TensorField H = sing.H_b + sing.H_rho_eta + H_tilde;
  ScalarField tau = sing.tau_sing + seed.tau_tilde;
  const auto [u1, u2] = cartesian_gradient(seed.u);
  const auto [t1, t2] = cartesian_gradient(tau);
  const auto [l1, l2] = cartesian_gradient(lambda_full(alpha, lambda_tilde));
  const auto S_ud = seed.udot.samples(), S_u1 = u1.samples(), S_u2 = u2.samples();
  const auto S_t = tau.samples(), S_t1 = t1.samples(), S_t2 = t2.samples();
  const auto S_l1 = l1.samples(), S_l2 = l2.samples();
  const auto S_h11 = H.h11.samples(), S_h12 = H.h12.samples();
  std::vector<double> F1(N * M), F2(N * M);
  for (size_t i = 0; i < F1.size(); ++i) {
    double a1, a2;
    h_dot_grad(S_h11[i], S_h12[i], S_l1[i], S_l2[i], a1, a2);
    F1[i] = -a1 - S_ud[i] * S_u1[i] + 0.5 * S_t1[i] - 0.5 * S_t[i] * S_l1[i];
    F2[i] = -a2 - S_ud[i] * S_u2[i] + 0.5 * S_t2[i] - 0.5 * S_t[i] * S_l2[i];
  }
  auto R = divergence(H);
  R -= interp_to_half(to_complex(ScalarField::from_samples(g, F1), ScalarField::from_samples(g, F2)), *g);
  for (int j = -g->K; j <= g->K; ++j) R.at(j, N - 1) = 0.0;
  return R;
}

}  // namespace s1c
