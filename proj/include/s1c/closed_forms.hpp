#pragma once

// Closed-form building blocks: the cutoff chi and the singular 1/r profiles of
// tau and H. Templated on the scalar type so Dual numbers give exact derivatives.

#include <cmath>

#include "s1c/dual.hpp"

namespace s1c {

// chi(r) = psi(r - 1), psi(x) = g(x) / (g(x) + g(1 - x)), g(x) = exp(-1/x) for x > 0.
template <class T>
T chi(const T& r) {
  using std::exp;
  const double x0 = value(r) - 1.0;
  if (x0 <= 0.0) return T(0.0);
  if (x0 >= 1.0) return T(1.0);
  const T x = r - 1.0;
  const T g0 = exp(-1.0 / x);
  const T g1 = exp(-1.0 / (1.0 - x));
  return g0 / (g0 + g1);
}

inline double chi_prime(double r) {
  const double x = r - 1.0;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double g0 = std::exp(-1.0 / x), g1 = std::exp(-1.0 / (1.0 - x));
  const double dg0 = g0 / (x * x), dg1 = g1 / ((1.0 - x) * (1.0 - x));
  const double s = g0 + g1;
  return (dg0 * g1 + g0 * dg1) / (s * s);
}

template <class T>
T chi_log(const T& r) {
  using std::log;
  if (value(r) <= 1.0) return T(0.0);
  return chi(r) * log(r);
}

template <class T>
struct Tensor2 {
  T h11{};
  T h12{};
};

struct SingularParams {
  double b = 0.0;
  double p = 0.0;  // rho cos(eta)
  double q = 0.0;  // rho sin(eta)
};

template <class T>
struct Polar {
  T r, c1, s1, c2, s2, c3, s3;
};

template <class T>
Polar<T> polar(const T& x, const T& y) {
  using std::sqrt;
  Polar<T> P;
  P.r = sqrt(x * x + y * y);
  P.c1 = x / P.r;
  P.s1 = y / P.r;
  P.c2 = P.c1 * P.c1 - P.s1 * P.s1;
  P.s2 = 2.0 * P.s1 * P.c1;
  P.c3 = P.c2 * P.c1 - P.s2 * P.s1;
  P.s3 = P.s2 * P.c1 + P.c2 * P.s1;
  return P;
}

template <class T>
T tau_b(double b, const T& x, const T& y) {
  const auto P = polar(x, y);
  return b * chi(P.r) / P.r;
}

template <class T>
T tau_rho(double p, double q, const T& x, const T& y) {
  const auto P = polar(x, y);
  return chi(P.r) * (p * P.c1 + q * P.s1) / P.r;
}

template <class T>
Tensor2<T> h_b(double b, const T& x, const T& y) {
  const auto P = polar(x, y);
  const T a = -b * chi(P.r) / (2.0 * P.r);
  return {a * P.c2, a * P.s2};
}

// The rho-eta tensor without its 3-theta part: -(chi/4r)(cos(theta+eta), sin(theta+eta)).
template <class T>
Tensor2<T> h_rho_1(double p, double q, const T& x, const T& y) {
  const auto P = polar(x, y);
  const T a = -chi(P.r) / (4.0 * P.r);
  return {a * (p * P.c1 - q * P.s1), a * (p * P.s1 + q * P.c1)};
}

// The 3-theta part: -(chi/4r)(cos(3theta-eta), sin(3theta-eta)).
template <class T>
Tensor2<T> h_rho_3(double p, double q, const T& x, const T& y) {
  const auto P = polar(x, y);
  const T a = -chi(P.r) / (4.0 * P.r);
  return {a * (p * P.c3 + q * P.s3), a * (p * P.s3 - q * P.c3)};
}

template <class T>
Tensor2<T> h_sing(const SingularParams& s, const T& x, const T& y) {
  const auto A = h_b(s.b, x, y);
  const auto B = h_rho_1(s.p, s.q, x, y);
  const auto C = h_rho_3(s.p, s.q, x, y);
  return {A.h11 + B.h11 + C.h11, A.h12 + B.h12 + C.h12};
}

template <class T>
T tau_sing(const SingularParams& s, const T& x, const T& y) {
  return tau_b(s.b, x, y) + tau_rho(s.p, s.q, x, y);
}

}  // namespace s1c
