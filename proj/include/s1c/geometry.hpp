#pragma once

// Geometric read-out of a solution: cone angle at infinity, the physical
// metric factor and extrinsic curvature, and the far-field charges of tau.

#include <cmath>
#include <numbers>
#include <vector>

#include "s1c/picard.hpp"

namespace s1c {

inline double cone_angle(double alpha) {
  if (!(alpha < 1.0)) throw Error(ErrorKind::DegenerateCone, "alpha must be below 1, got " + std::to_string(alpha));
  return 2.0 * std::numbers::pi * (1.0 - alpha);
}

// Physical samples at (node, angle), index n*M + m.
struct PhysicalData {
  GridPtr grid;
  std::vector<double> lambda;         // -alpha chi ln r + lambda~
  std::vector<double> metric_factor;  // e^{2 lambda}
  std::vector<double> K11, K12, K22;  // e^{lambda} (H + tau/2 delta)
  std::vector<double> tau_full;       // e^{-lambda} tau
  std::vector<double> H11, H12, tau;  // rescaled inputs, kept for round trips
};

inline ScalarField tau_rescaled(const SolutionBundle& B, const SeedData& seed) {
  const auto s = B.params(seed.b);
  return sample_function(seed.udot.grid_ptr(), [&](double x, double y) { return tau_sing(s, x, y); }) + seed.tau_tilde;
}

inline PhysicalData reconstruct_physical(const SolutionBundle& B, const SeedData& seed) {
  const GridPtr& g = seed.udot.grid_ptr();
  const auto sing = singular_tensors(B.params(seed.b), g);
  const TensorField H = sing.H_b + sing.H_rho_eta + B.H_tilde;
  PhysicalData P;
  P.grid = g;
  P.lambda = lambda_full(B.alpha, B.lambda_tilde).samples();
  P.H11 = H.h11.samples();
  P.H12 = H.h12.samples();
  P.tau = (sing.tau_sing + seed.tau_tilde).samples();
  const size_t n = P.lambda.size();
  P.metric_factor.resize(n);
  P.K11.resize(n);
  P.K12.resize(n);
  P.K22.resize(n);
  P.tau_full.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double el = std::exp(P.lambda[i]);
    P.metric_factor[i] = el * el;
    P.K11[i] = el * (P.H11[i] + 0.5 * P.tau[i]);
    P.K22[i] = el * (-P.H11[i] + 0.5 * P.tau[i]);
    P.K12[i] = el * P.H12[i];
    P.tau_full[i] = P.tau[i] / el;
  }
  return P;
}

struct Charges {
  double b = 0.0, p = 0.0, q = 0.0;
};

// b = (1/2pi) int tau r dtheta, p = (1/pi) int tau cos r dtheta, q likewise with
// sin, read from the Fourier coefficients at the given node (default R_max).
inline Charges asymptotic_charges(const ScalarField& tau, int node = -1) {
  const Grid& g = tau.grid();
  const int n = node < 0 ? g.N - 1 : node;
  const double r = g.r[n];
  return {r * tau.a(0, n), r * tau.a(1, n), r * tau.b(1, n)};
}

}  // namespace s1c
