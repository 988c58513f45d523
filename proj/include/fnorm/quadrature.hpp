#pragma once

// Adaptive Gauss-Kronrod 7/15 quadrature on a finite interval.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fnorm {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  // Local relative floor, so large integrals do not chase roundoff.
  double rel_tol = 1e-14;
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class G>
void gk15(G& g, double a, double b, double& kronrod, double& gauss, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = g(c);
  double k = kronrod_weights[7] * fc;
  double gs = gauss_weights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = h * kronrod_nodes[i];
    double f1 = g(c - dx);
    double f2 = g(c + dx);
    k += kronrod_weights[i] * (f1 + f2);
    if (i % 2 == 1) gs += gauss_weights[i / 2] * (f1 + f2);
  }
  evals += 15;
  kronrod = k * h;
  gauss = gs * h;
}

template <class G>
void adapt(G& g, double a, double b, double tol, double rel, int depth, int max_depth,
           QuadratureResult& r) {
  double k = 0.0;
  double gs = 0.0;
  gk15(g, a, b, k, gs, r.evaluations);
  if (!std::isfinite(k)) {
    r.value = std::numeric_limits<double>::infinity();
    return;
  }
  double err = std::abs(k - gs);
  if (err <= std::max(tol, rel * std::abs(k)) || depth >= max_depth || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a)) {
    if (err > std::max(tol, rel * std::abs(k))) r.converged = false;
    r.value += k;
    r.error += err;
    return;
  }
  double m = 0.5 * (a + b);
  adapt(g, a, m, 0.5 * tol, rel, depth + 1, max_depth, r);
  if (std::isinf(r.value)) return;
  adapt(g, m, b, 0.5 * tol, rel, depth + 1, max_depth, r);
}

}  // namespace detail

/// Integral of g over [a, b]. A non-finite integrand value makes the result +inf.
template <class G>
QuadratureResult integrate_adaptive(G&& g, double a, double b, QuadratureOptions opts = {}) {
  QuadratureResult r;
  if (!(b > a)) return r;
  detail::adapt(g, a, b, opts.abs_tol, opts.rel_tol, 0, opts.max_depth, r);
  return r;
}

}  // namespace fnorm
