#pragma once

// Complex-mode machinery for the divergence equation d_i K_ij = G_j.
//
// A pair of real fields (f1, f2) is stored as g = f1 + i f2 with complex
// Fourier modes j in [-K, K]. A traceless symmetric tensor is h = H11 + i H12.
// With D- = d1 - i d2 the divergence of h is D- h, and mode n of h feeds mode
// n-1 of the divergence through r^-n (r^n h_n)'.
//
// Tensors live on nodes and divergences on half nodes. Each tensor mode is
// recovered from its divergence by first-order marching: outward from the
// origin for n >= 1 (where the homogeneous solution r^-n decays) and inward
// from R_max for n <= 0 (where it is r^|n|). This is the tensor D+ Y of the
// potential formulation without ever forming Y.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "s1c/field.hpp"

namespace s1c {

using cplx = std::complex<double>;

struct ComplexModes {
  int K = 0;
  int N = 0;
  std::vector<cplx> c;

  ComplexModes() = default;
  ComplexModes(int K_, int N_) : K(K_), N(N_), c((2 * K_ + 1) * N_) {}

  cplx& at(int j, int i) { return c[(j + K) * N + i]; }
  cplx at(int j, int i) const { return c[(j + K) * N + i]; }
  cplx* mode(int j) { return &c[(j + K) * N]; }
  const cplx* mode(int j) const { return &c[(j + K) * N]; }

  ComplexModes& operator+=(const ComplexModes& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  ComplexModes& operator-=(const ComplexModes& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
};

inline ComplexModes to_complex(const ScalarField& f1, const ScalarField& f2) {
  f1.check(f2);
  const Grid& g = f1.grid();
  ComplexModes z(g.K, g.N);
  for (int n = 0; n < g.N; ++n) {
    z.at(0, n) = {f1.a(0, n), f2.a(0, n)};
    for (int k = 1; k <= g.K; ++k) {
      const double a1 = f1.a(k, n), b1 = f1.b(k, n), a2 = f2.a(k, n), b2 = f2.b(k, n);
      z.at(k, n) = {0.5 * (a1 + b2), 0.5 * (a2 - b1)};
      z.at(-k, n) = {0.5 * (a1 - b2), 0.5 * (a2 + b1)};
    }
  }
  return z;
}

inline ComplexModes to_complex(const TensorField& H) { return to_complex(H.h11, H.h12); }

// Real and imaginary parts as real Fourier coefficients at one radial index.
struct RealPair {
  double a1, b1, a2, b2;
};
inline RealPair real_coeffs(const ComplexModes& z, int k, int i) {
  if (k == 0) return {z.at(0, i).real(), 0.0, z.at(0, i).imag(), 0.0};
  const cplx p = z.at(k, i), m = z.at(-k, i);
  return {p.real() + m.real(), m.imag() - p.imag(), p.imag() + m.imag(), p.real() - m.real()};
}

inline TensorField to_tensor(const ComplexModes& z, const GridPtr& g) {
  TensorField H(g);
  for (int n = 0; n < g->N; ++n)
    for (int k = 0; k <= g->K; ++k) {
      const auto c = real_coeffs(z, k, n);
      H.h11.a(k, n) = c.a1;
      H.h12.a(k, n) = c.a2;
      if (k > 0) {
        H.h11.b(k, n) = c.b1;
        H.h12.b(k, n) = c.b2;
      }
    }
  return H;
}

// Weighted L2 norms squared of the real and imaginary parts of half-node data
// on rows 0..N-2 with weight (1 + rh^2)^e.
inline std::pair<double, double> half_norm_sq(const ComplexModes& z, const Grid& g, double e) {
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < g.N - 1; ++i) {
    const double w = g.wh[i] * std::pow(1.0 + g.rh[i] * g.rh[i], e);
    const auto c0 = real_coeffs(z, 0, i);
    double t1 = c0.a1 * c0.a1, t2 = c0.a2 * c0.a2;
    for (int k = 1; k <= g.K; ++k) {
      const auto c = real_coeffs(z, k, i);
      t1 += 0.5 * (c.a1 * c.a1 + c.b1 * c.b1);
      t2 += 0.5 * (c.a2 * c.a2 + c.b2 * c.b2);
    }
    s1 += w * t1;
    s2 += w * t2;
  }
  return {s1, s2};
}

inline double half_max_abs(const ComplexModes& z, const Grid& g) {
  double m = 0.0;
  for (int j = -z.K; j <= z.K; ++j)
    for (int i = 0; i < g.N - 1; ++i) m = std::max(m, std::abs(z.at(j, i)));
  return m;
}

// Value of node data of mode n at r = 0.
inline cplx origin_value(const Grid& g, int n, const cplx* K) {
  return n == 0 ? g.ext0 * K[0] + g.ext1 * K[1] : cplx(0.0);
}

// Node -> half node by averaging neighbours (the origin closes the first cell).
inline ComplexModes interp_to_half(const ComplexModes& z, const Grid& g) {
  ComplexModes out(z.K, z.N);
  for (int j = -z.K; j <= z.K; ++j) {
    const cplx* v = z.mode(j);
    cplx* o = out.mode(j);
    o[0] = 0.5 * (origin_value(g, j, v) + v[0]);
    for (int i = 1; i < g.N; ++i) o[i] = 0.5 * (v[i - 1] + v[i]);
  }
  return out;
}

// L = r^-n K closed at r = 0 for n <= 0 modes (L is even there).
template <class T>
T origin_scaled(const Grid& g, int m, const T* K) {
  return g.ext0 * K[0] / std::pow(g.r[0], m) + g.ext1 * K[1] / std::pow(g.r[1], m);
}

// D- of tensor mode n (nodes 0..N-1) into divergence mode n-1 at half nodes
// 0..N-1, as rm^-n ((r^n K)(rR) - (r^n K)(rL)) / (rR - rL).
template <class T>
void dminus(const Grid& g, int n, const T* K, T* G) {
  for (int i = 0; i < g.N; ++i) {
    const double rL = i == 0 ? 0.0 : g.r[i - 1];
    const double rR = g.r[i];
    const double rm = g.rh[i];
    if (n >= 1) {
      const T KL = i == 0 ? T(0.0) : K[i - 1];
      G[i] = (std::pow(rR / rm, n) * K[i] - std::pow(rL / rm, n) * KL) / (rR - rL);
    } else {
      const int m = -n;
      const T LL = i == 0 ? std::pow(rm, m) * origin_scaled(g, m, K) : std::pow(rm / rL, m) * K[i - 1];
      G[i] = (std::pow(rm / rR, m) * K[i] - LL) / (rR - rL);
    }
  }
}

// Divergence of a node tensor, as half-node complex modes. Mode K of the
// result would need tensor mode K+1 and stays 0.
inline ComplexModes divergence(const TensorField& H) {
  const Grid& g = H.h11.grid();
  const auto h = to_complex(H);
  ComplexModes G(g.K, g.N);
  for (int n = -g.K + 1; n <= g.K; ++n) dminus(g, n, h.mode(n), G.mode(n - 1));
  return G;
}

// Inverts the discrete divergence mode by mode. The zero mode of the source
// carries the log coefficient c = (1/2pi) sum wh G_0, which equals R_max times
// the mode-1 tensor at the outer node (the sum telescopes).
class DivOperator {
 public:
  explicit DivOperator(GridPtr g) : g_(std::move(g)) {}

  const Grid& grid() const { return *g_; }
  const GridPtr& grid_ptr() const { return g_; }

  cplx log_coefficient(const ComplexModes& G) const {
    const Grid& g = *g_;
    cplx s = 0.0;
    for (int i = 0; i < g.N; ++i) s += g.wh[i] * G.at(0, i);
    return s / (2.0 * std::numbers::pi);
  }

  struct Result {
    cplx c = 0.0;       // log coefficient of the source
    ComplexModes Ktot;  // tensor modes -K+1..K at nodes
  };

  // Mode K of G would need tensor mode K+1 and is left unsolved.
  Result solve(const ComplexModes& G) const {
    const Grid& g = *g_;
    const int N = g.N, K = g.K;
    Result res;
    res.c = log_coefficient(G);
    res.Ktot = ComplexModes(K, N);
    for (int n = -K + 1; n <= K; ++n) {
      const cplx* src = G.mode(n - 1);
      cplx* Kn = res.Ktot.mode(n);
      if (n >= 1) {
        for (int i = 0; i < N; ++i) {
          const double rL = i == 0 ? 0.0 : g.r[i - 1], rR = g.r[i], rm = g.rh[i];
          const cplx KL = i == 0 ? cplx(0.0) : Kn[i - 1];
          Kn[i] = (src[i] * (rR - rL) + std::pow(rL / rm, n) * KL) / std::pow(rR / rm, n);
        }
      } else {
        const int m = -n;
        Kn[N - 1] = 0.0;
        for (int i = N - 1; i >= 1; --i) {
          const double rL = g.r[i - 1], rR = g.r[i], rm = g.rh[i];
          Kn[i - 1] = (std::pow(rm / rR, m) * Kn[i] - src[i] * (rR - rL)) / std::pow(rm / rL, m);
        }
      }
    }
    return res;
  }

 private:
  GridPtr g_;
};

}  // namespace s1c
