#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "s1c/s1c.hpp"

using namespace s1c;
constexpr double pi = std::numbers::pi;

namespace {

double gauss(double x, double y) { return std::exp(-(x * x + y * y)); }

GridPtr medium() { return build_grid(16, 512, 100.0, -0.5); }

SolutionBundle zero_bundle(const GridPtr& g) {
  SolutionBundle B;
  B.lambda_tilde = ScalarField(g);
  B.H_tilde = TensorField(g);
  return B;
}

// A bundle with arbitrary (not solved) contents, for algebraic identities.
SolutionBundle busy_bundle(const GridPtr& g) {
  SolutionBundle B = zero_bundle(g);
  B.alpha = 0.03;
  B.p = 0.02;
  B.q = -0.01;
  B.lambda_tilde = sample_function(g, [](double x, double y) { return 0.1 * gauss(x - 0.2, y); });
  B.H_tilde.h11 = sample_function(g, [](double x, double y) { return 0.05 * x * gauss(x, y); });
  B.H_tilde.h12 = sample_function(g, [](double x, double y) { return -0.03 * gauss(x, y + 0.4); });
  return B;
}

SeedData tau_seed(const GridPtr& g) {
  return make_seed(ScalarField(g), ScalarField(g), sample_function(g, [](double x, double y) { return 0.02 * gauss(x, y); }),
                   0.004);
}

}  // namespace

TEST(ConeAngle, Values) {
  EXPECT_DOUBLE_EQ(cone_angle(0.0), 2.0 * pi);
  EXPECT_DOUBLE_EQ(cone_angle(0.25), 1.5 * pi);
  try {
    cone_angle(1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCone);
  }
}

TEST(Physical, ZeroBundleIsFlat) {
  const auto g = medium();
  const auto P = reconstruct_physical(zero_bundle(g), zero_seed(g));
  for (size_t i = 0; i < P.metric_factor.size(); ++i) {
    EXPECT_EQ(P.metric_factor[i], 1.0);
    EXPECT_EQ(P.K11[i], 0.0);
    EXPECT_EQ(P.K12[i], 0.0);
    EXPECT_EQ(P.K22[i], 0.0);
  }
}

TEST(Physical, TraceWithRespectToMetricIsMeanCurvature) {
  const auto g = medium();
  const auto P = reconstruct_physical(busy_bundle(g), tau_seed(g));
  for (size_t i = 0; i < P.K11.size(); ++i) {
    const double tr = (P.K11[i] + P.K22[i]) / P.metric_factor[i];
    EXPECT_NEAR(tr, P.tau_full[i], 1e-10 * (1.0 + std::abs(P.tau_full[i])));
  }
}

TEST(Physical, TracelessPartRecoversRescaledTensor) {
  const auto g = medium();
  const auto P = reconstruct_physical(busy_bundle(g), tau_seed(g));
  for (size_t i = 0; i < P.K11.size(); ++i) {
    const double el = std::exp(-P.lambda[i]);
    EXPECT_NEAR(0.5 * el * (P.K11[i] - P.K22[i]), P.H11[i], 1e-10);
    EXPECT_NEAR(el * P.K12[i], P.H12[i], 1e-10);
  }
}

TEST(Charges, MonopoleRoundTrip) {
  const auto g = medium();
  const auto tau = sample_function(g, [](double x, double y) { return tau_b(0.3, x, y); });
  const auto c = asymptotic_charges(tau);
  EXPECT_NEAR(c.b, 0.3, 1e-10);
  EXPECT_NEAR(c.p, 0.0, 1e-10);
  EXPECT_NEAR(c.q, 0.0, 1e-10);
}

TEST(Charges, GaussianHasNoCharges) {
  const auto g = medium();
  const auto c = asymptotic_charges(sample_function(g, gauss));
  EXPECT_NEAR(c.b, 0.0, 1e-12);
  EXPECT_NEAR(c.p, 0.0, 1e-12);
  EXPECT_NEAR(c.q, 0.0, 1e-12);
}

TEST(Charges, DipoleRoundTrip) {
  const auto g = medium();
  const auto tau = sample_function(g, [](double x, double y) { return tau_rho(0.1 * std::cos(0.7), 0.1 * std::sin(0.7), x, y); });
  const auto c = asymptotic_charges(tau);
  EXPECT_NEAR(c.p, 0.1 * std::cos(0.7), 1e-10);
  EXPECT_NEAR(c.q, 0.1 * std::sin(0.7), 1e-10);
  EXPECT_NEAR(c.b, 0.0, 1e-10);
}

TEST(Charges, SolvedBundleRoundTrip) {
  const auto g = medium();
  const std::vector<Bump> ud{{0.1, 0.5, 0.0, 1.0}}, u{{0.1, -0.5, 0.25, 1.0}}, t{{0.001, 0.0, 0.3, 1.0}};
  const auto seed = make_seed(sample_analytic(ud, g), sample_analytic(u, g), sample_analytic(t, g), 0.005);
  const auto B = solve_constraints(seed, {});
  const auto c = asymptotic_charges(tau_rescaled(B, seed));
  EXPECT_NEAR(c.b, seed.b, 1e-6);
  EXPECT_NEAR(c.p, B.p, 1e-6);
  EXPECT_NEAR(c.q, B.q, 1e-6);
}
