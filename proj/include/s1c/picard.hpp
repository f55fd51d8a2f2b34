#pragma once

// Outer fixed-point map (alpha, lambda~, H~) -> (alpha', lambda~', H~').

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "s1c/lichnerowicz.hpp"

namespace s1c {

struct IterState {
  double alpha = 0.0;
  ScalarField lambda_tilde;
  TensorField H_tilde;

  static IterState zero(const GridPtr& g) { return {0.0, ScalarField(g), TensorField(g)}; }
};

// |alpha| + ||lambda~||_{H^2_delta} + ||H~||_{H^1_{delta+1}}.
inline double combined_norm(const IterState& s) {
  const double d = s.lambda_tilde.grid().delta;
  return std::abs(s.alpha) + weighted_sobolev_norm(s.lambda_tilde, 2, d) + weighted_sobolev_norm(s.H_tilde, 1, d + 1.0);
}

inline double combined_distance(const IterState& a, const IterState& b) {
  IterState d{a.alpha - b.alpha, a.lambda_tilde - b.lambda_tilde, a.H_tilde - b.H_tilde};
  return combined_norm(d);
}

struct StepResult {
  IterState next;
  double p = 0.0, q = 0.0;
  double cond = 1.0;
  double m = 0.0, phi = 0.0;
};

inline StepResult picard_step(const DivOperator& op, const IterState& s, const SeedData& seed) {
  StepResult out;
  const auto pq = solve_rho_eta(op, seed, s.alpha, s.lambda_tilde, s.H_tilde, seed.b);
  out.p = pq.p;
  out.q = pq.q;
  out.cond = pq.cond;
  const SingularParams params{seed.b, pq.p, pq.q};
  auto mom = assemble_momentum(op, seed, s.alpha, s.lambda_tilde, s.H_tilde, params);
  out.m = mom.m;
  out.phi = mom.phi;
  auto lam = solve_lambda(hamiltonian_rhs(seed, s.H_tilde, params));
  out.next = {lam.alpha, std::move(lam.lambda_tilde), std::move(mom.H_tilde)};
  return out;
}

struct SolverOptions {
  double tol_fixed_point = 1e-10;
  int max_iter = 100;
  double epsilon_threshold = 0.5;
};

struct ResidualReport {
  double momentum_residual_norm = 0.0;
  double hamiltonian_residual_norm = 0.0;
  double pointwise_max_momentum = 0.0;
  double pointwise_max_hamiltonian = 0.0;
};

struct SolutionBundle {
  double alpha = 0.0, rho = 0.0, eta = 0.0, p = 0.0, q = 0.0;
  ScalarField lambda_tilde;
  TensorField H_tilde;
  int iterations = 0;
  std::vector<double> contraction_ratios;
  std::vector<double> differences;
  double selection_cond = 1.0;
  ResidualReport residuals;
  bool converged = false;
  std::optional<ErrorKind> failure;
  std::string message;

  SingularParams params(double b) const { return {b, p, q}; }
  IterState state() const { return {alpha, lambda_tilde, H_tilde}; }
};

inline ResidualReport residuals(const SolutionBundle& B, const SeedData& seed) {
  seed.udot.check(B.lambda_tilde);
  const Grid& g = seed.udot.grid();
  const double e = g.delta + 2.0;
  const SingularParams s = B.params(seed.b);
  ResidualReport rep;
  const auto Rm = momentum_residual(seed, B.alpha, B.lambda_tilde, B.H_tilde, s);
  const auto [m1, m2] = half_norm_sq(Rm, g, e);
  rep.momentum_residual_norm = std::sqrt(m1) + std::sqrt(m2);
  rep.pointwise_max_momentum = half_max_abs(Rm, g);
  const auto Rh = hamiltonian_residual(seed, B.alpha, B.lambda_tilde, B.H_tilde, s);
  rep.hamiltonian_residual_norm = std::sqrt(weighted_l2_sq(Rh, e));
  const auto S = Rh.samples();
  for (int i = 0; i < (g.N - 1) * g.M; ++i)
    rep.pointwise_max_hamiltonian = std::max(rep.pointwise_max_hamiltonian, std::abs(S[i]));
  return rep;
}

// Iterates from the zero state (or `init`) and never throws on iteration
// failure: the bundle records it so callers can still write diagnostics.
inline SolutionBundle run_constraints(const SeedData& seed, const SolverOptions& opts,
                                      const std::optional<IterState>& init = std::nullopt) {
  const GridPtr& g = seed.udot.grid_ptr();
  if (!(seed.epsilon <= opts.epsilon_threshold))
    throw Error(ErrorKind::EpsilonAboveThreshold, "epsilon = " + std::to_string(seed.epsilon) +
                                                      " exceeds the threshold " + std::to_string(opts.epsilon_threshold));
  DivOperator op(g);
  SolutionBundle B;
  IterState x = init ? *init : IterState::zero(g);
  StepResult last;
  double first_norm = -1.0, prev_d = -1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    try {
      last = picard_step(op, x, seed);
    } catch (const Error& e) {
      B.failure = e.kind();
      B.message = e.what();
      break;
    }
    const double d = combined_distance(last.next, x);
    const double nrm = combined_norm(last.next);
    B.iterations = it;
    B.differences.push_back(d);
    if (prev_d > 0.0) B.contraction_ratios.push_back(d / prev_d);
    prev_d = d;
    x = std::move(last.next);
    B.p = last.p;
    B.q = last.q;
    B.selection_cond = last.cond;
    if (first_norm < 0.0) first_norm = nrm;
    if (!std::isfinite(nrm) || (first_norm > 0.0 && nrm > 10.0 * first_norm)) {
      B.failure = ErrorKind::DivergenceDetected;
      B.message = "combined norm grew to " + std::to_string(nrm);
      break;
    }
    if (d <= opts.tol_fixed_point * nrm) {
      B.converged = true;
      break;
    }
  }
  if (!B.converged && !B.failure) {
    B.failure = ErrorKind::NoConvergence;
    B.message = "no convergence after " + std::to_string(opts.max_iter) + " iterations";
  }
  B.alpha = x.alpha;
  B.lambda_tilde = std::move(x.lambda_tilde);
  B.H_tilde = std::move(x.H_tilde);
  B.rho = rho_of(B.p, B.q);
  B.eta = eta_of(B.p, B.q);
  if (B.lambda_tilde.finite() && B.H_tilde.h11.finite() && B.H_tilde.h12.finite())
    B.residuals = residuals(B, seed);
  return B;
}

inline SolutionBundle solve_constraints(const SeedData& seed, const SolverOptions& opts,
                                        const std::optional<IterState>& init = std::nullopt) {
  auto B = run_constraints(seed, opts, init);
  if (B.failure) throw Error(*B.failure, B.message);
  return B;
}

}  // namespace s1c
