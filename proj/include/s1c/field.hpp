#pragma once

// Scalar and traceless-symmetric tensor fields on R^2 stored as truncated
// Fourier series in theta at each radial node, with dealiased products,
// Cartesian derivatives, plane quadrature and weighted Sobolev norms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "s1c/error.hpp"
#include "s1c/grid.hpp"

namespace s1c {

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr g)
      : g_(std::move(g)), a_((g_->K + 1) * g_->N, 0.0), b_((g_->K + 1) * g_->N, 0.0) {}

  const Grid& grid() const { return *g_; }
  const GridPtr& grid_ptr() const { return g_; }
  bool empty() const { return !g_; }

  // Cosine coefficient of mode k at node n (k = 0..K).
  double& a(int k, int n) { return a_[k * g_->N + n]; }
  double a(int k, int n) const { return a_[k * g_->N + n]; }
  // Sine coefficient (k = 1..K; k = 0 is kept at zero).
  double& b(int k, int n) { return b_[k * g_->N + n]; }
  double b(int k, int n) const { return b_[k * g_->N + n]; }

  const std::vector<double>& cos_data() const { return a_; }
  const std::vector<double>& sin_data() const { return b_; }

  // Physical samples f(r_n, theta_m), index n*M + m.
  std::vector<double> samples() const {
    const int N = g_->N, M = g_->M, K = g_->K;
    std::vector<double> out(N * M, 0.0);
    for (int k = 0; k <= K; ++k) {
      const double* ct = &g_->ct[k * M];
      const double* st = &g_->st[k * M];
      for (int n = 0; n < N; ++n) {
        const double ak = a(k, n), bk = b(k, n);
        if (ak == 0.0 && bk == 0.0) continue;
        double* row = &out[n * M];
        for (int m = 0; m < M; ++m) row[m] += ak * ct[m] + bk * st[m];
      }
    }
    return out;
  }

  static ScalarField from_samples(const GridPtr& g, const std::vector<double>& s) {
    ScalarField f(g);
    const int N = g->N, M = g->M, K = g->K;
    for (int n = 0; n < N; ++n) {
      const double* row = &s[n * M];
      for (int k = 0; k <= K; ++k) {
        const double* ct = &g->ct[k * M];
        const double* st = &g->st[k * M];
        double ca = 0.0, sb = 0.0;
        for (int m = 0; m < M; ++m) {
          ca += row[m] * ct[m];
          sb += row[m] * st[m];
        }
        const double scale = k == 0 ? 1.0 / M : 2.0 / M;
        f.a(k, n) = ca * scale;
        f.b(k, n) = k == 0 ? 0.0 : sb * scale;
      }
    }
    return f;
  }

  // Value at node n and arbitrary angle.
  double eval(int n, double theta) const {
    double v = 0.0;
    for (int k = 0; k <= g_->K; ++k) v += a(k, n) * std::cos(k * theta) + b(k, n) * std::sin(k * theta);
    return v;
  }

  // Value of mode k at r = 0 by the regularity closure.
  double origin_cos(int k) const { return k == 0 ? g_->ext0 * a(0, 0) + g_->ext1 * a(0, 1) : 0.0; }

  ScalarField& operator+=(const ScalarField& o) {
    check(o);
    for (size_t i = 0; i < a_.size(); ++i) {
      a_[i] += o.a_[i];
      b_[i] += o.b_[i];
    }
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    check(o);
    for (size_t i = 0; i < a_.size(); ++i) {
      a_[i] -= o.a_[i];
      b_[i] -= o.b_[i];
    }
    return *this;
  }
  ScalarField& operator*=(double s) {
    for (auto& x : a_) x *= s;
    for (auto& x : b_) x *= s;
    return *this;
  }

  void check(const ScalarField& o) const {
    if (g_ != o.g_ && !(g_ && o.g_ && g_->same_as(*o.g_)))
      throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    for (double x : b_) m = std::max(m, std::abs(x));
    return m;
  }

  bool finite() const {
    for (double x : a_)
      if (!std::isfinite(x)) return false;
    for (double x : b_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  GridPtr g_;
  std::vector<double> a_, b_;
};

inline ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
inline ScalarField operator*(double s, ScalarField a) { return a *= s; }

struct TensorField {
  ScalarField h11, h12;

  TensorField() = default;
  explicit TensorField(const GridPtr& g) : h11(g), h12(g) {}
  TensorField(ScalarField a, ScalarField b) : h11(std::move(a)), h12(std::move(b)) {}

  TensorField& operator+=(const TensorField& o) {
    h11 += o.h11;
    h12 += o.h12;
    return *this;
  }
  TensorField& operator-=(const TensorField& o) {
    h11 -= o.h11;
    h12 -= o.h12;
    return *this;
  }
  TensorField& operator*=(double s) {
    h11 *= s;
    h12 *= s;
    return *this;
  }
};

inline TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
inline TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }

// Samples fn(x, y) at every (node, angle) and transforms back.
inline ScalarField sample_function(const GridPtr& g, const std::function<double(double, double)>& fn) {
  std::vector<double> s(g->N * g->M);
  for (int n = 0; n < g->N; ++n)
    for (int m = 0; m < g->M; ++m) {
      const double t = g->theta(m);
      s[n * g->M + m] = fn(g->r[n] * std::cos(t), g->r[n] * std::sin(t));
    }
  return ScalarField::from_samples(g, s);
}

inline ScalarField radial_field(const GridPtr& g, const RadialProfile& p) {
  ScalarField f(g);
  for (int n = 0; n < g->N; ++n) f.a(0, n) = p[n];
  return f;
}

inline ScalarField multiply(const ScalarField& f, const ScalarField& g) {
  f.check(g);
  auto sf = f.samples();
  const auto sg = g.samples();
  for (size_t i = 0; i < sf.size(); ++i) sf[i] *= sg[i];
  return ScalarField::from_samples(f.grid_ptr(), sf);
}

// Slope at x of the quadratic through (x0, f0), (x1, f1), (x2, f2).
inline double quadratic_slope(double x, double x0, double f0, double x1, double f1, double x2, double f2) {
  return f0 * ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2)) + f1 * ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2)) +
         f2 * ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
}

// d/dr of a mode-k coefficient a = r^k b(r^2) whose value at r = 0 is
// a_origin. Away from the origin: centered differences in s, which sum by
// parts exactly against the node weights. Their O(h^2) error does not vanish
// at r = 0, and the k/r terms of the gradient would amplify it to O(h), so
// near the origin b is differentiated as a quadratic in rho = r^2 instead
// (one-sided at the first node). The two are blended smoothly over
// r in (1/2, 1) so that second derivatives stay second order.
inline std::vector<double> radial_derivative(const Grid& g, const double* a, int k, double a_origin) {
  const int N = g.N;
  std::vector<double> d(N);
  const auto& r = g.r;
  for (int n = 0; n < N - 1; ++n) {
    const double beta = chi(2.0 * r[n]);
    double ds = 0.0, dp = 0.0;
    if (beta > 0.0) ds = (a[n + 1] - (n == 0 ? a_origin : a[n - 1])) / (2.0 * g.h * g.J[n]);
    if (beta < 1.0) {
      const int c = n == 0 ? 1 : n;
      auto b = [&](int i) { return a[i] / std::pow(r[i], k); };
      const double db = quadratic_slope(r[n] * r[n], r[c - 1] * r[c - 1], b(c - 1), r[c] * r[c], b(c),
                                        r[c + 1] * r[c + 1], b(c + 1));
      dp = k * a[n] / r[n] + 2.0 * std::pow(r[n], k + 1) * db;
    }
    d[n] = beta * ds + (1.0 - beta) * dp;
  }
  d[N - 1] = (3.0 * a[N - 1] - 4.0 * a[N - 2] + a[N - 3]) / (2.0 * g.h * g.J[N - 1]);
  return d;
}

// (d1 f, d2 f) by mode coupling k -> k +- 1; mode K + 1 is dropped.
inline std::pair<ScalarField, ScalarField> cartesian_gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  const int K = g.K, N = g.N;
  ScalarField d1(f.grid_ptr()), d2(f.grid_ptr());

  auto add_cos = [&](ScalarField& t, int k, int n, double v) {
    if (k <= K) t.a(k, n) += v;
  };
  auto add_sin = [&](ScalarField& t, int k, int n, double v) {
    if (k == 0 || k > K) return;
    if (k < 0)
      t.b(-k, n) -= v;
    else
      t.b(k, n) += v;
  };
  auto add_cos_any = [&](ScalarField& t, int k, int n, double v) { add_cos(t, k < 0 ? -k : k, n, v); };

  for (int k = 0; k <= K; ++k) {
    const auto da = radial_derivative(g, &f.cos_data()[k * N], k, f.origin_cos(k));
    std::vector<double> db(N, 0.0);
    if (k > 0) db = radial_derivative(g, &f.sin_data()[k * N], k, 0.0);
    for (int n = 0; n < N; ++n) {
      const double ir = k / g.r[n];
      const double Ap = 0.5 * (da[n] + ir * f.a(k, n)), Am = 0.5 * (da[n] - ir * f.a(k, n));
      const double Bp = 0.5 * (db[n] + ir * f.b(k, n)), Bm = 0.5 * (db[n] - ir * f.b(k, n));
      add_cos_any(d1, k - 1, n, Ap);
      add_cos(d1, k + 1, n, Am);
      add_sin(d1, k - 1, n, Bp);
      add_sin(d1, k + 1, n, Bm);

      add_sin(d2, k - 1, n, -Ap);
      add_sin(d2, k + 1, n, Am);
      add_cos_any(d2, k - 1, n, Bp);
      add_cos(d2, k + 1, n, -Bm);
    }
  }
  return {std::move(d1), std::move(d2)};
}

inline double integrate(const ScalarField& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int n = 0; n < g.N; ++n) s += g.w[n] * f.a(0, n);
  return s;
}

// Weighted L2 norm squared with weight (1+r^2)^e, by Parseval.
inline double weighted_l2_sq(const ScalarField& f, double e) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int n = 0; n < g.N; ++n) {
    double m = f.a(0, n) * f.a(0, n);
    double hi = 0.0;
    for (int k = 1; k <= g.K; ++k) hi += f.a(k, n) * f.a(k, n) + f.b(k, n) * f.b(k, n);
    s += g.w[n] * std::pow(1.0 + g.r[n] * g.r[n], e) * (m + 0.5 * hi);
  }
  return s;
}

inline double weighted_sobolev_norm(const ScalarField& f, int m, double delta) {
  if (m < 0 || m > 2) throw Error(ErrorKind::UnsupportedOrder, "weighted norms support m in {0,1,2}");
  double total = std::sqrt(weighted_l2_sq(f, delta));
  if (m == 0) return total;
  auto [f1, f2] = cartesian_gradient(f);
  total += std::sqrt(weighted_l2_sq(f1, delta + 1.0)) + std::sqrt(weighted_l2_sq(f2, delta + 1.0));
  if (m == 1) return total;
  auto [f11, f12] = cartesian_gradient(f1);
  auto [f21, f22] = cartesian_gradient(f2);
  (void)f21;  // equal to f12 up to discretization; each multi-index counted once
  total += std::sqrt(weighted_l2_sq(f11, delta + 2.0)) + std::sqrt(weighted_l2_sq(f12, delta + 2.0)) +
           std::sqrt(weighted_l2_sq(f22, delta + 2.0));
  return total;
}

inline double weighted_sobolev_norm(const TensorField& H, int m, double delta) {
  return weighted_sobolev_norm(H.h11, m, delta) + weighted_sobolev_norm(H.h12, m, delta);
}

}  // namespace s1c
