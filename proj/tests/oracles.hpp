#pragma once

// Reference computations written directly from the definitions, sharing no
// code with the library beyond the StepFunction container.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fnorm/step_function.hpp"

namespace oracle {

inline double lp_norm(const fnorm::StepFunction& x, double p) {
  double sum = 0.0;
  for (const fnorm::Piece& q : x.pieces()) sum += std::pow(std::abs(q.value), p) * (q.end - q.start);
  return std::pow(sum, 1.0 / p);
}

/// int |x|^p.
inline double power_integral(const fnorm::StepFunction& x, double p) {
  return std::pow(lp_norm(x, p), p);
}

/// inf_k (1 + k^p A) / k by calculus: the derivative vanishes at
/// k = ((p - 1) A)^{-1/p}.
inline double amemiya_by_calculus(double A, double p) {
  double k = std::pow((p - 1.0) * A, -1.0 / p);
  return (1.0 + std::pow(k, p) * A) / k;
}

/// p (p - 1)^{(1 - p) / p} ||x||_p.
inline double amemiya_closed_form(const fnorm::StepFunction& x, double p) {
  return p * std::pow(p - 1.0, (1.0 - p) / p) * lp_norm(x, p);
}

/// mu{|x| > lambda} summed piece by piece.
inline double distribution(const fnorm::StepFunction& x, double lambda) {
  double m = 0.0;
  for (const fnorm::Piece& q : x.pieces()) {
    if (std::abs(q.value) > lambda) m += q.end - q.start;
  }
  return m;
}

/// Levels at which two distribution functions must be compared: every
/// absolute value, every midpoint between consecutive ones, and zero.
inline std::vector<double> distribution_levels(const fnorm::StepFunction& x) {
  std::vector<double> v{0.0};
  for (const fnorm::Piece& q : x.pieces()) v.push_back(std::abs(q.value));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::size_t n = v.size();
  for (std::size_t i = 1; i < n; ++i) v.push_back(0.5 * (v[i - 1] + v[i]));
  return v;
}

/// (1/t) int_0^t |x|.
inline double cesaro(const fnorm::StepFunction& x, double t) {
  double acc = 0.0;
  for (const fnorm::Piece& q : x.pieces()) {
    if (q.start >= t) break;
    acc += std::abs(q.value) * (std::min(q.end, t) - q.start);
  }
  return acc / t;
}

/// x^(r)(t) from the sorted absolute values.
inline double rearranged_value(const fnorm::StepFunction& x, double t) {
  std::vector<fnorm::Piece> ps = x.pieces();
  std::stable_sort(ps.begin(), ps.end(), [](const fnorm::Piece& a, const fnorm::Piece& b) {
    return std::abs(a.value) > std::abs(b.value);
  });
  double pos = 0.0;
  for (const fnorm::Piece& q : ps) {
    pos += q.end - q.start;
    if (t < pos) return std::abs(q.value);
  }
  return 0.0;
}

/// Minimum of a function of log k over [lo, hi] by a dense grid followed by
/// golden refinement around the best grid point.
inline double minimize_log_grid(const std::function<double(double)>& g, double lo, double hi,
                                int points = 4000) {
  double a = std::log(lo), b = std::log(hi);
  double best = INFINITY;
  int arg = 0;
  for (int i = 0; i <= points; ++i) {
    double v = g(std::exp(a + (b - a) * i / points));
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  double step = (b - a) / points;
  double l = a + (arg - 1) * step, r = a + (arg + 1) * step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    double c = r - phi * (r - l), d = l + phi * (r - l);
    if (g(std::exp(c)) <= g(std::exp(d))) {
      r = d;
    } else {
      l = c;
    }
  }
  return std::min(best, g(std::exp(0.5 * (l + r))));
}

/// inf_k k f(1, int |x/k|^p) for an outer norm f on R^2 given as a lambda.
inline double power_f_norm(const fnorm::StepFunction& x, double p,
                           const std::function<double(double, double)>& f) {
  double A = power_integral(x, p);
  auto g = [&](double k) { return k * f(1.0, A * std::pow(k, -p)); };
  double scale = std::pow(A, 1.0 / p);
  return minimize_log_grid(g, scale * 1e-4, scale * 1e4);
}

}  // namespace oracle
