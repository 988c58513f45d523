#include "fnorm/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double u, double p) {
  if (p == 1.0) return u;
  if (p == 2.0) return u * u;
  return std::pow(u, p);
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Conjugate of |v|^p restricted to v >= 0: (p-1) p^{-q} |u|^q, or the
// indicator of [0, 1] when p = 1.
double power_conjugate(double u, double p) {
  u = std::abs(u);
  if (p == 1.0) return u <= 1.0 ? 0.0 : kInf;
  double q = p / (p - 1.0);
  return (p - 1.0) * std::pow(p, -q) * std::pow(u, q);
}

}  // namespace

OrliczFunction OrliczFunction::power(double p) {
  require(p >= 1.0 && std::isfinite(p), "power requires p >= 1");
  OrliczFunction f;
  f.tag_ = Tag::power;
  f.p_ = p;
  f.set_default_claims();
  return f;
}

OrliczFunction OrliczFunction::flat_power(double a, double p) {
  require(a > 0.0 && std::isfinite(a), "flat_power requires a > 0");
  require(p >= 1.0 && std::isfinite(p), "flat_power requires p >= 1");
  OrliczFunction f;
  f.tag_ = Tag::flat_power;
  f.a_ = a;
  f.p_ = p;
  f.set_default_claims();
  return f;
}

OrliczFunction OrliczFunction::capped(double b, double p) {
  require(b > 0.0 && std::isfinite(b), "capped requires b > 0");
  require(p >= 1.0 && std::isfinite(p), "capped requires p >= 1");
  OrliczFunction f;
  f.tag_ = Tag::capped;
  f.b_ = b;
  f.p_ = p;
  f.set_default_claims();
  return f;
}

OrliczFunction OrliczFunction::exp_minus_one() {
  OrliczFunction f;
  f.tag_ = Tag::exp_minus_one;
  f.set_default_claims();
  return f;
}

OrliczFunction OrliczFunction::s_composed(const OrliczFunction& base, double s) {
  require(s > 0.0 && s <= 1.0, "s_composed requires s in (0, 1]");
  OrliczFunction f;
  f.tag_ = Tag::s_composed;
  f.s_ = s;
  f.base_ = std::make_shared<const OrliczFunction>(base);
  f.set_default_claims();
  return f;
}

void OrliczFunction::set_default_claims() {
  switch (tag_) {
    case Tag::power:
      delta2_claimed_ = true;
      n_function_claimed_ = p_ > 1.0;
      break;
    case Tag::flat_power:
    case Tag::capped:
      delta2_claimed_ = false;
      n_function_claimed_ = p_ > 1.0;
      break;
    case Tag::exp_minus_one:
      delta2_claimed_ = false;
      n_function_claimed_ = false;
      break;
    case Tag::s_composed:
      delta2_claimed_ = base_->delta2_claimed();
      if (base_->tag() == Tag::power) {
        n_function_claimed_ = base_->p() * s_ > 1.0;
      } else {
        n_function_claimed_ = s_ == 1.0 && base_->n_function_claimed();
      }
      break;
  }
}

OrliczFunction OrliczFunction::with_claims(bool delta2, bool n_function) const {
  OrliczFunction f = *this;
  f.delta2_claimed_ = delta2;
  f.n_function_claimed_ = n_function;
  return f;
}

double OrliczFunction::operator()(double u) const {
  u = std::abs(u);
  switch (tag_) {
    case Tag::power:
      return ipow(u, p_);
    case Tag::flat_power:
      return ipow(std::max(u - a_, 0.0), p_);
    case Tag::capped:
      return u > b_ ? kInf : ipow(u, p_);
    case Tag::exp_minus_one:
      return std::expm1(u);
    case Tag::s_composed:
      return (*base_)(s_ == 1.0 ? u : std::pow(u, s_));
  }
  return kInf;
}

double OrliczFunction::a_param() const {
  switch (tag_) {
    case Tag::flat_power:
      return a_;
    case Tag::s_composed:
      return std::pow(base_->a_param(), 1.0 / s_);
    default:
      return 0.0;
  }
}

double OrliczFunction::b_param() const {
  switch (tag_) {
    case Tag::capped:
      return b_;
    case Tag::s_composed:
      return std::pow(base_->b_param(), 1.0 / s_);
    default:
      return kInf;
  }
}

bool OrliczFunction::convex() const {
  if (tag_ != Tag::s_composed) return true;
  if (s_ == 1.0) return base_->convex();
  // g(u^s) with g = |.|^p is |.|^{ps}.
  return base_->tag() == Tag::power && base_->p() * s_ >= 1.0;
}

std::string OrliczFunction::describe() const {
  std::ostringstream os;
  switch (tag_) {
    case Tag::power:
      os << "power(p=" << p_ << ")";
      break;
    case Tag::flat_power:
      os << "flat_power(a=" << a_ << ",p=" << p_ << ")";
      break;
    case Tag::capped:
      os << "capped(b=" << b_ << ",p=" << p_ << ")";
      break;
    case Tag::exp_minus_one:
      os << "exp_minus_one";
      break;
    case Tag::s_composed:
      os << "s_composed(" << base_->describe() << ",s=" << s_ << ")";
      break;
  }
  return os.str();
}

OrliczParams params(const OrliczFunction& phi) { return {phi.a_param(), phi.b_param()}; }

double young_conjugate(const OrliczFunction& phi, double u) {
  if (!phi.convex()) {
    throw NonConvexFunction("Young conjugate needs a convex function, got " + phi.describe());
  }
  u = std::abs(u);
  using Tag = OrliczFunction::Tag;
  switch (phi.tag()) {
    case Tag::power:
      return power_conjugate(u, phi.p());
    case Tag::flat_power:
      // v <= a contributes |u| a; the rest is a shifted power.
      return u * phi.a() + power_conjugate(u, phi.p());
    case Tag::capped: {
      double b = phi.b();
      double p = phi.p();
      if (p == 1.0) return u <= 1.0 ? 0.0 : (u - 1.0) * b;
      double v_star = std::pow(u / p, 1.0 / (p - 1.0));
      if (v_star <= b) return power_conjugate(u, p);
      return u * b - ipow(b, p);
    }
    case Tag::exp_minus_one:
      return u <= 1.0 ? 0.0 : u * std::log(u) - u + 1.0;
    case Tag::s_composed: {
      const OrliczFunction& g = *phi.base();
      if (phi.s() == 1.0) return young_conjugate(g, u);
      if (g.tag() == Tag::power) return power_conjugate(u, g.p() * phi.s());
      return young_conjugate_numeric(phi, u);
    }
  }
  return young_conjugate_numeric(phi, u);
}

double young_conjugate_numeric(const OrliczFunction& phi, double u) {
  if (!phi.convex()) {
    throw NonConvexFunction("Young conjugate needs a convex function, got " + phi.describe());
  }
  u = std::abs(u);
  if (u == 0.0) return 0.0;
  auto h = [&](double v) {
    double f = phi(v);
    return std::isinf(f) ? -kInf : u * v - f;
  };
  const double lo = 1e-8;
  const double hi = std::max(10.0 * u, 1e3);
  const int n = 400;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  int best = 0;
  double best_val = h(grid[0]);
  for (int i = 1; i < n; ++i) {
    double val = h(grid[i]);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  // Concave objective: refine inside the neighbouring grid cells.
  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, n - 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double hc = h(c);
  double hd = h(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - invphi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + invphi * (b - a);
      hd = h(d);
    }
  }
  best_val = std::max({best_val, hc, hd});
  // The supremum includes the limit v -> 0, where the objective tends to 0.
  return std::max(best_val, 0.0);
}

Delta2Result delta2_probe(const OrliczFunction& phi, double u_max, double K_cap, int points) {
  Delta2Result r{true, 1.0, std::numeric_limits<double>::quiet_NaN(), phi.delta2_claimed()};
  const double lo = 1e-8;
  points = std::max(points, 2);
  for (int i = 0; i < points; ++i) {
    double u = lo * std::pow(u_max / lo, double(i) / (points - 1));
    double f1 = phi(u);
    double f2 = phi(2.0 * u);
    double ratio;
    if (std::isinf(f1) && std::isinf(f2)) {
      ratio = 1.0;
    } else if (f1 == 0.0) {
      ratio = f2 == 0.0 ? 1.0 : kInf;
    } else {
      ratio = f2 / f1;
    }
    if (ratio > K_cap) {
      r.holds = false;
      r.fails_at = u;
      r.K = ratio;
      return r;
    }
    r.K = std::max(r.K, ratio);
  }
  return r;
}

GrowthEvidence superlinear_growth_probe(const OrliczFunction& phi, double u_max, int points) {
  GrowthEvidence e;
  e.monotone_growth = true;
  points = std::max(points, 2);
  for (int i = 0; i < points; ++i) {
    double u = std::pow(u_max, double(i) / (points - 1));
    double r = phi(u) / u;
    if (!e.ratio.empty() && r < e.ratio.back() * (1.0 - 1e-12)) e.monotone_growth = false;
    e.u.push_back(u);
    e.ratio.push_back(r);
  }
  if (!(e.ratio.back() >= 10.0 * e.ratio.front())) e.monotone_growth = false;
  return e;
}

}  // namespace fnorm
