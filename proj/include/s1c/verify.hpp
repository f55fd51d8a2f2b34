#pragma once

// Identity and oracle checks shared by the `verify` command and the tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "s1c/dual.hpp"
#include "s1c/geometry.hpp"

namespace s1c {

// max over nodes of |(1/2)|H_b + H_{rho,eta}|^2 - tau_sing^2/4|, from the
// sampled fields.
inline double cancellation_defect(const SingularParams& s, const GridPtr& g) {
  const auto f = singular_tensors(s, g);
  const auto H = f.H_b + f.H_rho_eta;
  const auto a = H.h11.samples(), b = H.h12.samples(), t = f.tau_sing.samples();
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs((a[i] * a[i] + b[i] * b[i]) - 0.25 * t[i] * t[i]));
  return worst;
}

namespace detail {
using D2 = Dual<2>;

inline Tensor2<double> div_of(const Tensor2<D2>& H) {
  return {H.h11.d[0] + H.h12.d[1], H.h12.d[0] - H.h11.d[1]};
}

struct IdentityAccumulator {
  double err = 0.0, scale = 0.0;
  void add(double lhs, double rhs) {
    err = std::max(err, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  double relative() const { return scale > 0.0 ? err / scale : err; }
};
}  // namespace detail

// Divergence identities of the b-driven and (p,q)-driven singular parts,
// evaluated with exact derivatives at every node with r in (0.5, R_max) and
// every sample angle. Returns the worst relative defect over the four
// identities (two per part).
inline double divergence_identity_defect(const SingularParams& s, double alpha, const Grid& g) {
  using detail::D2;
  detail::IdentityAccumulator acc[4];
  for (int n = 0; n < g.N; ++n) {
    const double r = g.r[n];
    if (!(r > 0.5 && r < g.R)) continue;
    const double chi_r = chi(r), dchi = chi_prime(r);
    for (int m = 0; m < g.M; ++m) {
      const double th = g.theta(m);
      const D2 x = D2::variable(r * std::cos(th), 0), y = D2::variable(r * std::sin(th), 1);
      const D2 rr = sqrt(x * x + y * y);
      const D2 ell = alpha * chi_log(rr);
      const double l1 = ell.d[0], l2 = ell.d[1];
      const double c = std::cos(th), sn = std::sin(th);

      // b part: (1/2) d_j(b chi/r) + (H_b)_ij d_i(alpha chi ln r) + (1/2)(b chi/r) d_j(alpha chi ln r).
      const D2 tb = tau_b(s.b, x, y);
      const auto Hb = h_b(s.b, x, y);
      const double lhs1x = 0.5 * tb.d[0] + Hb.h11.v * l1 + Hb.h12.v * l2 + 0.5 * tb.v * l1;
      const double lhs1y = 0.5 * tb.d[1] + Hb.h12.v * l1 - Hb.h11.v * l2 + 0.5 * tb.v * l2;
      const double k1 = 0.5 * s.b * (-chi_r / (r * r) + dchi / r);
      acc[0].add(lhs1x, k1 * c);
      acc[0].add(lhs1y, k1 * sn);
      const auto dHb = detail::div_of(Hb);
      const double k2 = -s.b * chi_r / (2.0 * r * r) - s.b * dchi / (2.0 * r);
      acc[1].add(dHb.h11, k2 * c);
      acc[1].add(dHb.h12, k2 * sn);

      // (p,q) part with e = (p, q)/rho.
      const D2 tr = tau_rho(s.p, s.q, x, y);
      const auto H1 = h_rho_1(s.p, s.q, x, y);
      const auto H3 = h_rho_3(s.p, s.q, x, y);
      const double H11 = H1.h11.v + H3.h11.v, H12 = H1.h12.v + H3.h12.v;
      const double src = dchi / (4.0 * r);
      const double lhs3x = 0.5 * tr.d[0] - src * s.p + H11 * l1 + H12 * l2 + 0.5 * tr.v * l1;
      const double lhs3y = 0.5 * tr.d[1] - src * s.q + H12 * l1 - H11 * l2 + 0.5 * tr.v * l2;
      const double c2 = std::cos(2 * th), s2 = std::sin(2 * th);
      const double rc = s.p * c2 + s.q * s2;   // rho cos(2 theta - eta)
      const double rs = s.p * s2 - s.q * c2;   // rho sin(2 theta - eta)
      const double k3 = -chi_r / (2.0 * r * r) + dchi / (4.0 * r);
      acc[2].add(lhs3x, k3 * rc);
      acc[2].add(lhs3y, k3 * rs);
      const auto dH3 = detail::div_of(H3);
      const double k4 = -chi_r / (2.0 * r * r) - dchi / (4.0 * r);
      acc[3].add(dH3.h11, k4 * rc);
      acc[3].add(dH3.h12, k4 * rs);
    }
  }
  double worst = 0.0;
  for (const auto& a : acc) worst = std::max(worst, a.relative());
  return worst;
}

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline double gaussian_dipole(double x, double y) {
  const double r2 = x * x + y * y;
  return (4.0 * r2 - 4.0) * std::exp(-r2);
}

inline double poisson_dipole_error(const GridPtr& g) {
  const auto f = sample_function(g, gaussian_dipole);
  const auto s = poisson_solve(f);
  double err = 0.0, mx = 0.0;
  for (int n = 0; n < g->N; ++n) {
    const double ex = std::exp(-g->r[n] * g->r[n]);
    err = std::max(err, std::abs(s.v.a(0, n) - ex));
    mx = std::max(mx, ex);
  }
  return err / mx;
}

inline VerifyReport run_verification(int K, int N, double R, double delta) {
  VerifyReport rep;
  auto add = [&](std::string name, double v, double tol, std::string d = "") {
    rep.checks.push_back({std::move(name), v, tol, std::isfinite(v) && v <= tol, std::move(d)});
  };
  const auto g = build_grid(K, N, R, delta);
  const auto g2 = build_grid(K, 2 * N, R, delta);

  const double e1 = poisson_dipole_error(g), e2 = poisson_dipole_error(g2);
  add("poisson_dipole_max_relative_error", e2, 1e-3, "f = (4r^2-4)exp(-r^2) at 2 N_r");
  add("poisson_convergence_order_deviation", std::abs(std::log2(e1 / e2) - 2.0), 0.3,
      "observed order " + std::to_string(std::log2(e1 / e2)));

  const auto gauss = sample_function(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  const auto sg = poisson_solve(gauss);
  add("poisson_log_coefficient_error", std::abs(sg.c_log - 0.5), 1e-4, "f = exp(-r^2), expected 1/2");
  const double fn = std::sqrt(weighted_l2_sq(gauss, delta + 2.0));
  add("poisson_weighted_residual", std::sqrt(weighted_l2_sq(poisson_residual(sg, gauss), delta + 2.0)),
      1e-8 * std::max(1.0, fn));
  if (R >= 40.0) {
    const auto far = greens_convolution_oracle(gauss, {{40.0, 0.0}});
    add("greens_far_field_error", std::abs(far[0] - 0.5 * std::log(40.0)), 1e-3, "|x| = 40");
  }

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst_cancel = 0.0, worst_div = 0.0;
  for (int t = 0; t < 10; ++t) {
    const SingularParams s{U(rng), U(rng), U(rng)};
    const double scale = s.b * s.b + s.p * s.p + s.q * s.q;
    worst_cancel = std::max(worst_cancel, cancellation_defect(s, g) / scale);
    worst_div = std::max(worst_div, divergence_identity_defect(s, U(rng), *g));
  }
  add("singular_cancellation", worst_cancel, 1e-12, "relative to b^2 + rho^2, 10 random draws");
  add("divergence_identities", worst_div, 1e-10, "exact derivatives, r in (0.5, R_max)");

  DivOperator op(g);
  {
    const double b = 0.7;
    const auto H2 = correction_h2(op, b);
    auto R2 = divergence(sample_h_b(g, b) + H2);
    const auto tb = sample_function(g, [&](double x, double y) { return tau_b(b, x, y); });
    auto [a1, a2] = cartesian_gradient(tb);
    a1 *= 0.5;
    a2 *= 0.5;
    R2 -= interp_to_half(to_complex(a1, a2), *g);
    add("b_correction_divergence_residual", half_max_abs(R2, *g), 1e-10);
    add("b_correction_log_part", std::abs(op.log_coefficient(source_h2(b, g))), 1e-12);
  }

  {
    const SingularParams s{0.3, 0.1 * std::cos(0.7), 0.1 * std::sin(0.7)};
    const auto tau = sample_function(g, [&](double x, double y) { return tau_sing(s, x, y) + 0.05 * std::exp(-(x * x + y * y)); });
    const auto c = asymptotic_charges(tau);
    add("charge_round_trip", std::max({std::abs(c.b - s.b), std::abs(c.p - s.p), std::abs(c.q - s.q)}), 1e-6);
  }

  // Empirical elliptic conditioning for this delta: ||v||_{H^2_delta} / ||f||_{H^0_{delta+2}}.
  const double cond = weighted_sobolev_norm(sg.v, 2, delta) / fn;
  add("elliptic_conditioning_finite", std::isfinite(cond) ? 0.0 : 1.0, 0.0,
      "||v||_{H^2_delta}/||f||_{H^0_{delta+2}} = " + std::to_string(cond));
  if (delta < -0.9 || delta > -0.1)
    rep.warnings.push_back("delta = " + std::to_string(delta) +
                           " is close to an end of (-1,0); the elliptic estimate constant grows there (measured ratio " +
                           std::to_string(cond) + ")");
  return rep;
}

}  // namespace s1c
