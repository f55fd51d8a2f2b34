#pragma once

// Forward-mode dual numbers with a fixed number of tangent directions.
// Used to get exact derivatives of closed-form fields in tests and checks.

#include <array>
#include <cmath>

namespace s1c {

template <int D>
struct Dual {
  double v = 0.0;
  std::array<double, D> d{};

  Dual() = default;
  Dual(double x) : v(x) {}  // NOLINT: implicit promotion from constants

  static Dual variable(double x, int i) {
    Dual r(x);
    r.d[i] = 1.0;
    return r;
  }
};

inline double value(double x) { return x; }
template <int D>
double value(const Dual<D>& x) { return x.v; }

template <int D>
Dual<D> chain(const Dual<D>& a, double f, double df) {
  Dual<D> r(f);
  for (int i = 0; i < D; ++i) r.d[i] = df * a.d[i];
  return r;
}

template <int D>
Dual<D> operator-(const Dual<D>& a) { return chain(a, -a.v, -1.0); }

template <int D>
Dual<D> operator+(const Dual<D>& a, const Dual<D>& b) {
  Dual<D> r(a.v + b.v);
  for (int i = 0; i < D; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}
template <int D>
Dual<D> operator-(const Dual<D>& a, const Dual<D>& b) {
  Dual<D> r(a.v - b.v);
  for (int i = 0; i < D; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}
template <int D>
Dual<D> operator*(const Dual<D>& a, const Dual<D>& b) {
  Dual<D> r(a.v * b.v);
  for (int i = 0; i < D; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <int D>
Dual<D> operator/(const Dual<D>& a, const Dual<D>& b) {
  Dual<D> r(a.v / b.v);
  const double inv2 = 1.0 / (b.v * b.v);
  for (int i = 0; i < D; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv2;
  return r;
}

template <int D> Dual<D> operator+(const Dual<D>& a, double b) { return a + Dual<D>(b); }
template <int D> Dual<D> operator+(double a, const Dual<D>& b) { return Dual<D>(a) + b; }
template <int D> Dual<D> operator-(const Dual<D>& a, double b) { return a - Dual<D>(b); }
template <int D> Dual<D> operator-(double a, const Dual<D>& b) { return Dual<D>(a) - b; }
template <int D> Dual<D> operator*(const Dual<D>& a, double b) { return a * Dual<D>(b); }
template <int D> Dual<D> operator*(double a, const Dual<D>& b) { return Dual<D>(a) * b; }
template <int D> Dual<D> operator/(const Dual<D>& a, double b) { return a / Dual<D>(b); }
template <int D> Dual<D> operator/(double a, const Dual<D>& b) { return Dual<D>(a) / b; }

template <int D>
Dual<D> exp(const Dual<D>& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e);
}
template <int D>
Dual<D> log(const Dual<D>& a) { return chain(a, std::log(a.v), 1.0 / a.v); }
template <int D>
Dual<D> sqrt(const Dual<D>& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s);
}
template <int D>
Dual<D> sin(const Dual<D>& a) { return chain(a, std::sin(a.v), std::cos(a.v)); }
template <int D>
Dual<D> cos(const Dual<D>& a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }

template <int D>
Dual<D> atan2(const Dual<D>& y, const Dual<D>& x) {
  Dual<D> r(std::atan2(y.v, x.v));
  const double n = x.v * x.v + y.v * y.v;
  for (int i = 0; i < D; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / n;
  return r;
}

}  // namespace s1c
